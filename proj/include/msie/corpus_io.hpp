#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace msie {

struct Date {
  int year = 0;
  int month = 0;
  int day = 0;
  auto operator<=>(const Date&) const = default;
};

std::optional<Date> parse_date(std::string_view s);  // strict ISO-8601 YYYY-MM-DD
std::string format_date(const Date& d);

enum class PoiCategory : int {
  Education = 0,
  Entertainment,
  Food,
  BeverageShopping,
  Tourist,
  Transportation,
  MedicalService,
  PublicService,
};
inline constexpr int kPoiCategoryCount = 8;

// Display names in the fixed category order used everywhere downstream.
const std::array<std::string, kPoiCategoryCount>& poi_category_names();
std::optional<PoiCategory> parse_poi_category(std::string_view raw);  // case/space-insensitive

struct ListingRecord {
  std::string listing_id;
  std::string host_id;
  Date first_review;  // temporal split key
  double latitude = 0.0;
  double longitude = 0.0;
  double price = 0.0;  // currency per night, > 0
  std::string description;
  std::string host_about;
  // Aligned to ListingTable::stat_columns; nullopt = missing cell.
  std::vector<std::optional<double>> raw_stats;
};

struct RowReject {
  std::size_t row = 0;  // 1-based data row number (header not counted)
  std::string field;
  std::string kind;  // RangeViolation, DuplicateId, UnknownCategory, ...
  std::string message;
};

struct ListingTable {
  std::vector<std::string> stat_columns;
  std::vector<ListingRecord> rows;
  std::vector<RowReject> rejects;
};

struct ReviewDoc {
  std::string review_id;
  std::string listing_id;
  Date date;
  std::string text;
};

struct ReviewTable {
  std::vector<ReviewDoc> rows;
  std::size_t dropped_empty = 0;  // whitespace-only texts
  std::vector<RowReject> rejects;
};

struct PoiRecord {
  std::string poi_id;
  PoiCategory category = PoiCategory::Education;
  double latitude = 0.0;
  double longitude = 0.0;
};

struct PoiTable {
  std::vector<PoiRecord> rows;
  std::vector<RowReject> rejects;
};

struct DatasetSummary {
  std::size_t n_listings = 0;
  std::size_t n_reviews = 0;
  std::optional<Date> span_begin;
  std::optional<Date> span_end;
  std::array<std::size_t, kPoiCategoryCount> per_category_poi_counts{};
};

// Fixed leading columns of listings.csv; everything after is a stat column.
const std::vector<std::string>& listing_fixed_columns();

// Parsers collect row-level failures in .rejects and keep going; structural
// problems (missing column, empty file) throw DataError.
ListingTable parse_listings(const std::filesystem::path& path);
ListingTable parse_listings(const std::filesystem::path& path,
                            const std::vector<std::string>& schema);
ReviewTable parse_reviews(const std::filesystem::path& path);
PoiTable parse_pois(const std::filesystem::path& path);

// Earliest floor(ratio*N) records by (first_review, listing_id) become the
// training set. Deterministic; throws DegenerateSplit when N < 2.
std::pair<ListingTable, ListingTable> temporal_split(const ListingTable& listings,
                                                     double ratio = 0.8);

DatasetSummary dataset_stats(const ListingTable& listings, const ReviewTable& reviews,
                             const PoiTable& pois);

void write_listings(const std::filesystem::path& path, const ListingTable& table);
void write_reviews(const std::filesystem::path& path, const ReviewTable& table);
void write_pois(const std::filesystem::path& path, const PoiTable& table);

}  // namespace msie
