#include "msie/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "msie/csv.hpp"
#include "msie/error.hpp"

namespace msie {

namespace {

bool parse_int(std::string_view s, int& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_plain_double(std::string_view s, double& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// "$1,234.00" -> 1234.0; boolean stat fields "t"/"f" -> 1/0.
bool parse_stat_value(std::string_view raw, double& out) {
  std::string_view s = trim(raw);
  if (s.empty()) return false;
  if (s == "t" || s == "T" || s == "true" || s == "True" || s == "TRUE") {
    out = 1.0;
    return true;
  }
  if (s == "f" || s == "F" || s == "false" || s == "False" || s == "FALSE") {
    out = 0.0;
    return true;
  }
  std::string cleaned;
  cleaned.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c == '$' || c == ',' || std::isspace(c)) continue;
    if (c == '%') continue;  // host_response_rate style "95%"
    // UTF-8 currency marks (yen, euro, pound) arrive as multi-byte sequences
    if (c >= 0x80) continue;
    cleaned.push_back(static_cast<char>(c));
  }
  if (cleaned.empty()) return false;
  return parse_plain_double(cleaned, out);
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

}  // namespace

std::optional<Date> parse_date(std::string_view s) {
  s = trim(s);
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  Date d;
  if (!parse_int(s.substr(0, 4), d.year) || !parse_int(s.substr(5, 2), d.month) ||
      !parse_int(s.substr(8, 2), d.day))
    return std::nullopt;
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return std::nullopt;
  return d;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

const std::array<std::string, kPoiCategoryCount>& poi_category_names() {
  static const std::array<std::string, kPoiCategoryCount> names = {
      "Education",      "Entertainment",  "Food",            "Beverage Shopping",
      "Tourist",        "Transportation", "Medical Service", "Public Service"};
  return names;
}

std::optional<PoiCategory> parse_poi_category(std::string_view raw) {
  std::string_view s = trim(raw);
  std::string norm;
  norm.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !norm.empty();
      continue;
    }
    if (pending_space) {
      norm.push_back(' ');
      pending_space = false;
    }
    norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  const auto& names = poi_category_names();
  for (int i = 0; i < kPoiCategoryCount; ++i) {
    std::string lower;
    for (char c : names[static_cast<std::size_t>(i)])
      lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (norm == lower) return static_cast<PoiCategory>(i);
  }
  return std::nullopt;
}

const std::vector<std::string>& listing_fixed_columns() {
  static const std::vector<std::string> cols = {
      "listing_id", "host_id", "first_review", "latitude",
      "longitude",  "price",   "description",  "host_about"};
  return cols;
}

namespace {

void require_columns(const std::vector<std::string>& header,
                     const std::vector<std::string>& expected) {
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i >= header.size() || header[i] != expected[i])
      throw DataError("MissingColumn", expected[i]);
  }
}

}  // namespace

ListingTable parse_listings(const std::filesystem::path& path) {
  CsvTable csv = read_csv(path);
  const auto& fixed = listing_fixed_columns();
  require_columns(csv.header, fixed);

  ListingTable table;
  table.stat_columns.assign(csv.header.begin() + static_cast<long>(fixed.size()),
                            csv.header.end());

  std::unordered_set<std::string> seen_ids;
  seen_ids.reserve(csv.records.size());
  const std::size_t ncols = csv.header.size();

  for (std::size_t r = 0; r < csv.records.size(); ++r) {
    const auto& rec = csv.records[r];
    const std::size_t row_no = r + 1;
    auto reject = [&](std::string field, std::string kind, std::string msg) {
      table.rejects.push_back({row_no, std::move(field), std::move(kind), std::move(msg)});
    };
    if (rec.size() != ncols) {
      reject("", "FieldCountMismatch",
             "expected " + std::to_string(ncols) + " fields, got " + std::to_string(rec.size()));
      continue;
    }
    ListingRecord lr;
    lr.listing_id = rec[0];
    lr.host_id = rec[1];
    if (lr.listing_id.empty()) {
      reject("listing_id", "RangeViolation", "empty id");
      continue;
    }
    auto date = parse_date(rec[2]);
    if (!date) {
      reject("first_review", "BadDate", rec[2]);
      continue;
    }
    lr.first_review = *date;
    if (!parse_plain_double(trim(rec[3]), lr.latitude) || lr.latitude < -90.0 ||
        lr.latitude > 90.0) {
      reject("latitude", "RangeViolation", rec[3]);
      continue;
    }
    if (!parse_plain_double(trim(rec[4]), lr.longitude) || lr.longitude < -180.0 ||
        lr.longitude > 180.0) {
      reject("longitude", "RangeViolation", rec[4]);
      continue;
    }
    if (!parse_stat_value(rec[5], lr.price) || lr.price <= 0.0) {
      reject("price", "RangeViolation", rec[5]);
      continue;
    }
    lr.description = rec[6];
    lr.host_about = rec[7];

    bool bad_stat = false;
    lr.raw_stats.reserve(table.stat_columns.size());
    for (std::size_t j = 0; j < table.stat_columns.size(); ++j) {
      const std::string& cell = rec[fixed.size() + j];
      if (is_blank(cell)) {
        lr.raw_stats.emplace_back(std::nullopt);
        continue;
      }
      double v;
      if (!parse_stat_value(cell, v)) {
        reject(table.stat_columns[j], "UnparsableNumeric", cell);
        bad_stat = true;
        break;
      }
      lr.raw_stats.emplace_back(v);
    }
    if (bad_stat) continue;

    if (!seen_ids.insert(lr.listing_id).second) {
      reject("listing_id", "DuplicateId", lr.listing_id);
      continue;
    }
    table.rows.push_back(std::move(lr));
  }
  return table;
}

ListingTable parse_listings(const std::filesystem::path& path,
                            const std::vector<std::string>& schema) {
  CsvTable csv = read_csv(path);
  require_columns(csv.header, schema);
  if (csv.header.size() != schema.size())
    throw DataError("MissingColumn", "header has extra columns beyond schema");
  return parse_listings(path);
}

ReviewTable parse_reviews(const std::filesystem::path& path) {
  CsvTable csv = read_csv(path);
  require_columns(csv.header, {"review_id", "listing_id", "date", "text"});
  if (csv.records.empty()) throw DataError("EmptyTable", path.string());

  ReviewTable table;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t r = 0; r < csv.records.size(); ++r) {
    const auto& rec = csv.records[r];
    const std::size_t row_no = r + 1;
    if (rec.size() != 4) {
      table.rejects.push_back({row_no, "", "FieldCountMismatch", ""});
      continue;
    }
    if (is_blank(rec[3])) {
      ++table.dropped_empty;
      continue;
    }
    auto date = parse_date(rec[2]);
    if (!date) {
      table.rejects.push_back({row_no, "date", "BadDate", rec[2]});
      continue;
    }
    if (!seen_ids.insert(rec[0]).second) {
      table.rejects.push_back({row_no, "review_id", "DuplicateId", rec[0]});
      continue;
    }
    table.rows.push_back({rec[0], rec[1], *date, rec[3]});
  }
  return table;
}

PoiTable parse_pois(const std::filesystem::path& path) {
  CsvTable csv = read_csv(path);
  require_columns(csv.header, {"poi_id", "category", "latitude", "longitude"});

  PoiTable table;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t r = 0; r < csv.records.size(); ++r) {
    const auto& rec = csv.records[r];
    const std::size_t row_no = r + 1;
    auto reject = [&](std::string field, std::string kind, std::string msg) {
      table.rejects.push_back({row_no, std::move(field), std::move(kind), std::move(msg)});
    };
    if (rec.size() != 4) {
      reject("", "FieldCountMismatch", "");
      continue;
    }
    auto cat = parse_poi_category(rec[1]);
    if (!cat) {
      reject("category", "UnknownCategory", rec[1]);
      continue;
    }
    PoiRecord pr;
    pr.poi_id = rec[0];
    pr.category = *cat;
    if (!parse_plain_double(trim(rec[2]), pr.latitude) || pr.latitude < -90.0 ||
        pr.latitude > 90.0) {
      reject("latitude", "RangeViolation", rec[2]);
      continue;
    }
    if (!parse_plain_double(trim(rec[3]), pr.longitude) || pr.longitude < -180.0 ||
        pr.longitude > 180.0) {
      reject("longitude", "RangeViolation", rec[3]);
      continue;
    }
    if (!seen_ids.insert(pr.poi_id).second) {
      reject("poi_id", "DuplicateId", pr.poi_id);
      continue;
    }
    table.rows.push_back(std::move(pr));
  }
  return table;
}

std::pair<ListingTable, ListingTable> temporal_split(const ListingTable& listings,
                                                     double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ConfigError("BadSplitRatio", format_double(ratio));
  const std::size_t n = listings.rows.size();
  if (n < 2) throw DataError("DegenerateSplit", "need at least 2 records");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = listings.rows[a];
    const auto& rb = listings.rows[b];
    if (ra.first_review != rb.first_review) return ra.first_review < rb.first_review;
    return ra.listing_id < rb.listing_id;
  });

  const auto n_train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
  ListingTable train, test;
  train.stat_columns = listings.stat_columns;
  test.stat_columns = listings.stat_columns;
  for (std::size_t i = 0; i < n; ++i) {
    (i < n_train ? train : test).rows.push_back(listings.rows[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

DatasetSummary dataset_stats(const ListingTable& listings, const ReviewTable& reviews,
                             const PoiTable& pois) {
  DatasetSummary s;
  s.n_listings = listings.rows.size();
  s.n_reviews = reviews.rows.size();
  auto widen = [&](const Date& d) {
    if (!s.span_begin || d < *s.span_begin) s.span_begin = d;
    if (!s.span_end || d > *s.span_end) s.span_end = d;
  };
  if (!reviews.rows.empty()) {
    for (const auto& r : reviews.rows) widen(r.date);
  } else {
    for (const auto& l : listings.rows) widen(l.first_review);
  }
  for (const auto& p : pois.rows)
    ++s.per_category_poi_counts[static_cast<std::size_t>(p.category)];
  return s;
}

void write_listings(const std::filesystem::path& path, const ListingTable& table) {
  std::vector<std::string> header = listing_fixed_columns();
  header.insert(header.end(), table.stat_columns.begin(), table.stat_columns.end());
  std::vector<std::vector<std::string>> records;
  records.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    std::vector<std::string> rec;
    rec.reserve(header.size());
    rec.push_back(r.listing_id);
    rec.push_back(r.host_id);
    rec.push_back(format_date(r.first_review));
    rec.push_back(format_double(r.latitude));
    rec.push_back(format_double(r.longitude));
    rec.push_back(format_double(r.price));
    rec.push_back(r.description);
    rec.push_back(r.host_about);
    for (const auto& v : r.raw_stats) rec.push_back(v ? format_double(*v) : "");
    records.push_back(std::move(rec));
  }
  write_csv(path, header, records);
}

void write_reviews(const std::filesystem::path& path, const ReviewTable& table) {
  std::vector<std::vector<std::string>> records;
  records.reserve(table.rows.size());
  for (const auto& r : table.rows)
    records.push_back({r.review_id, r.listing_id, format_date(r.date), r.text});
  write_csv(path, {"review_id", "listing_id", "date", "text"}, records);
}

void write_pois(const std::filesystem::path& path, const PoiTable& table) {
  std::vector<std::vector<std::string>> records;
  records.reserve(table.rows.size());
  for (const auto& p : table.rows)
    records.push_back({p.poi_id, poi_category_names()[static_cast<std::size_t>(p.category)],
                       format_double(p.latitude), format_double(p.longitude)});
  write_csv(path, {"poi_id", "category", "latitude", "longitude"}, records);
}

}  // namespace msie
