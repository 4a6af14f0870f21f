#include "msie/synth.hpp"

#include <algorithm>
#include <cmath>

#include "msie/csv.hpp"
#include "msie/error.hpp"
#include "msie/neural.hpp"
#include "msie/rng.hpp"
#include "msie/sentiment.hpp"
#include "msie/spatial.hpp"

namespace msie {

namespace {

// days <-> civil date (Howard Hinnant's algorithms)
long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  long era = (y >= 0 ? y : y - 399) / 400;
  unsigned yoe = static_cast<unsigned>(y - era * 400);
  unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
  unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

Date civil_from_days(long z) {
  z += 719468;
  long era = (z >= 0 ? z : z - 146096) / 146097;
  unsigned doe = static_cast<unsigned>(z - era * 146097);
  unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  long y = static_cast<long>(yoe) + era * 400;
  unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  unsigned mp = (5 * doy + 2) / 153;
  unsigned d = doy - (153 * mp + 2) / 5 + 1;
  unsigned m = mp + (mp < 10 ? 3 : -9);
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

Date add_days(const Date& base, long days) {
  return civil_from_days(days_from_civil(base.year, base.month, base.day) + days);
}

std::string pad_id(const char* prefix, std::size_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, i);
  return buf;
}

void standardize(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  double inv = var > 0.0 ? 1.0 / std::sqrt(var) : 0.0;
  for (double& x : v) x = (x - mean) * inv;
}

const std::vector<std::string>& neutral_desc_tokens() {
  static const std::vector<std::string> pool = {
      "apartment", "room",    "subway",  "station",  "downtown", "district", "kitchen",
      "bathroom",  "bedroom", "balcony", "street",   "market",   "floor",    "building",
      "walk",      "minutes", "close",   "near",     "center",   "city",     "home",
      "guests",    "bed",     "living",  "area",     "located",  "quiet",    "local",
      "shops",     "park"};
  return pool;
}

const std::vector<std::string>& upscale_desc_tokens() {
  static const std::vector<std::string> pool = {
      "luxurious", "spacious",  "renovated", "stunning", "elegant", "stylish",
      "premium",   "gorgeous",  "bright",    "modern",   "designer", "panoramic"};
  return pool;
}

const std::vector<std::string>& budget_desc_tokens() {
  static const std::vector<std::string> pool = {
      "basic", "simple", "older", "compact", "budget", "plain",
      "small", "modest", "worn",  "dated",   "shared", "narrow"};
  return pool;
}

const std::vector<std::string>& host_about_tokens() {
  static const std::vector<std::string> pool = {
      "travel",  "reading", "music",   "coffee", "cooking", "photography", "hiking",
      "movies",  "teacher", "engineer", "artist", "student", "love",        "enjoy",
      "welcome", "sharing", "culture", "food",   "friends", "years"};
  return pool;
}

}  // namespace

SynthDataset synth_dataset(const SynthConfig& config) {
  if (config.n_listings < 2) throw ConfigError("BadSynthConfig", "need at least 2 listings");
  if (config.min_reviews > config.max_reviews)
    throw ConfigError("BadSynthConfig", "min_reviews > max_reviews");

  Rng rng(stage_seed(config.seed, "synth"));
  SynthDataset ds;
  const std::size_t n = config.n_listings;

  // --- POIs: uniform over a box slightly larger than the listing box.
  const double center_lat = 39.9, center_lon = 116.4;
  const double poi_half = 0.045, listing_half = 0.035;
  static const double category_gamma[kPoiCategoryCount] = {1.2, 0.5, 1.0, 0.8,
                                                           0.7, 1.5, 0.6, 0.9};
  std::size_t poi_counter = 0;
  for (int c = 0; c < kPoiCategoryCount; ++c) {
    for (std::size_t i = 0; i < config.n_pois_per_category; ++i) {
      PoiRecord p;
      p.poi_id = pad_id("P", poi_counter++, 5);
      p.category = static_cast<PoiCategory>(c);
      p.latitude = center_lat + rng.uniform(-poi_half, poi_half);
      p.longitude = center_lon + rng.uniform(-poi_half, poi_half);
      ds.pois.rows.push_back(std::move(p));
    }
  }

  // --- Listings: coordinates, dates, stat columns.
  ds.listings.stat_columns = {
      "bedrooms",        "bathrooms",      "accommodates",       "security_deposit",
      "cleaning_fee",    "guests_included", "minimum_nights",     "review_scores_rating",
      "host_listings_count", "amenity_count", "host_is_superhost", "instant_bookable",
      "shelf_noise_a",   "shelf_noise_b",  "weekly_discount"};

  const Date base_date{2017, 1, 1};
  const int id_width = static_cast<int>(std::to_string(n - 1).size());
  std::vector<double> bedrooms(n), accommodates(n), rating(n), amenities(n), superhost(n),
      guests(n);
  for (std::size_t i = 0; i < n; ++i) {
    ListingRecord l;
    l.listing_id = pad_id("L", i, id_width);
    l.host_id = pad_id("H", rng.uniform_index(n / 3 + 1), id_width);
    l.first_review = add_days(base_date, static_cast<long>(i * 730 / n));
    l.latitude = center_lat + rng.uniform(-listing_half, listing_half);
    l.longitude = center_lon + rng.uniform(-listing_half, listing_half);

    bedrooms[i] = 1.0 + static_cast<double>(rng.uniform_index(4));
    double bathrooms = 1.0 + (rng.uniform() < 0.3 ? 1.0 : 0.0);
    accommodates[i] = bedrooms[i] * 2.0 + static_cast<double>(rng.uniform_index(3));
    double deposit = std::floor(rng.uniform(0.0, 20.0)) * 50.0;
    double cleaning = std::floor(rng.uniform(0.0, 20.0)) * 10.0;
    guests[i] = 1.0 + static_cast<double>(rng.uniform_index(4));
    double min_nights = 1.0 + static_cast<double>(rng.uniform_index(7));
    rating[i] = std::floor(rng.uniform(80.0, 101.0));
    double host_count = 1.0 + static_cast<double>(rng.uniform_index(20));
    amenities[i] = 5.0 + static_cast<double>(rng.uniform_index(36));
    superhost[i] = rng.uniform() < 0.25 ? 1.0 : 0.0;
    double instant = rng.uniform() < 0.5 ? 1.0 : 0.0;
    double noise_a = rng.uniform();
    double noise_b = rng.normal();
    bool discount_missing = rng.uniform() < 0.45;
    double discount = std::floor(rng.uniform(0.0, 31.0)) / 100.0;

    l.raw_stats = {bedrooms[i], bathrooms, accommodates[i], deposit, cleaning, guests[i],
                   min_nights,  rating[i],  host_count,      amenities[i],
                   superhost[i], instant,   noise_a,         noise_b,
                   discount};
    // sparse missingness on two ordinary columns exercises median imputation
    if (rng.uniform() < 0.02) l.raw_stats[3] = std::nullopt;
    if (rng.uniform() < 0.02) l.raw_stats[7] = std::nullopt;
    if (discount_missing) l.raw_stats[14] = std::nullopt;

    ds.listings.rows.push_back(std::move(l));
  }

  // --- Latents.
  ds.f_stat.resize(n);
  ds.f_text.resize(n);
  ds.f_spatial.resize(n);
  ds.noise.resize(n);
  {
    std::vector<double> zb = bedrooms, za = accommodates, zr = rating, zm = amenities,
                        zs = superhost, zg = guests;
    for (auto* v : {&zb, &za, &zr, &zm, &zs, &zg}) standardize(*v);
    for (std::size_t i = 0; i < n; ++i)
      ds.f_stat[i] = 0.45 * zb[i] + 0.35 * za[i] + 0.3 * zr[i] + 0.25 * zm[i] +
                     0.2 * zs[i] + 0.15 * zg[i];
    standardize(ds.f_stat);
  }
  for (std::size_t i = 0; i < n; ++i) ds.f_text[i] = rng.normal();
  {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& l = ds.listings.rows[i];
      GeoPoint lp{l.latitude, l.longitude};
      double acc = 0.0;
      for (const auto& p : ds.pois.rows) {
        double d = haversine_km(lp, {p.latitude, p.longitude});
        if (d <= 1.0)
          acc += category_gamma[static_cast<int>(p.category)] * (1.0 - d);
      }
      ds.f_spatial[i] = acc;
    }
    standardize(ds.f_spatial);
  }

  // --- Texts: description quality tokens follow f_text.
  for (std::size_t i = 0; i < n; ++i) {
    auto& l = ds.listings.rows[i];
    const double u = ds.f_text[i];
    std::string desc;
    const auto& neutral = neutral_desc_tokens();
    std::size_t base_len = 10 + rng.uniform_index(6);
    for (std::size_t t = 0; t < base_len; ++t) {
      if (!desc.empty()) desc.push_back(' ');
      desc += neutral[rng.uniform_index(neutral.size())];
    }
    auto inject = [&](const std::vector<std::string>& pool, double strength) {
      auto k = static_cast<std::size_t>(std::lround(std::max(0.0, 2.5 * strength)));
      for (std::size_t t = 0; t < k; ++t) {
        desc.push_back(' ');
        desc += pool[rng.uniform_index(pool.size())];
      }
    };
    inject(upscale_desc_tokens(), u);
    inject(budget_desc_tokens(), -u);
    l.description = desc;

    if (i % 20 == 19) {
      l.host_about.clear();  // exercises the empty-document flag
    } else {
      const auto& pool = host_about_tokens();
      std::string about;
      std::size_t len = 6 + rng.uniform_index(8);
      for (std::size_t t = 0; t < len; ++t) {
        if (!about.empty()) about.push_back(' ');
        about += pool[rng.uniform_index(pool.size())];
      }
      l.host_about = about;
    }
  }

  // --- Reviews: polarity Bernoulli(sigmoid(1.5 * f_text)).
  const auto& lexicon = builtin_labeled_corpus();
  std::vector<const std::string*> pos_pool, neg_pool;
  for (const auto& [text, positive] : lexicon)
    (positive ? pos_pool : neg_pool).push_back(&text);
  std::size_t review_counter = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& l = ds.listings.rows[i];
    double p_pos = sigmoid(1.5 * ds.f_text[i]);
    std::size_t q = config.min_reviews +
                    rng.uniform_index(config.max_reviews - config.min_reviews + 1);
    for (std::size_t r = 0; r < q; ++r) {
      ReviewDoc doc;
      doc.review_id = pad_id("R", review_counter++, 6);
      doc.listing_id = l.listing_id;
      doc.date = add_days(l.first_review, static_cast<long>(rng.uniform_index(365)));
      if (review_counter % 200 == 0) {
        doc.text = "   ";  // whitespace-only, dropped with a count at parse time
      } else if (rng.uniform() < p_pos) {
        doc.text = *pos_pool[rng.uniform_index(pos_pool.size())];
      } else {
        doc.text = *neg_pool[rng.uniform_index(neg_pool.size())];
      }
      ds.reviews.rows.push_back(std::move(doc));
    }
  }

  // --- Prices.
  ds.log_price.resize(n);
  const double base_log_price = std::log(300.0);
  for (std::size_t i = 0; i < n; ++i) {
    ds.noise[i] = config.noise_sd * rng.normal();
    ds.log_price[i] = base_log_price + config.stat_w * ds.f_stat[i] +
                      config.text_w * ds.f_text[i] + config.spatial_w * ds.f_spatial[i] +
                      ds.noise[i];
    ds.listings.rows[i].price = std::exp(ds.log_price[i]);
  }
  return ds;
}

void synth_generate(const SynthConfig& config, const std::filesystem::path& out_dir) {
  SynthDataset ds = synth_dataset(config);
  std::filesystem::create_directories(out_dir);
  write_listings(out_dir / "listings.csv", ds.listings);
  write_reviews(out_dir / "reviews.csv", ds.reviews);
  write_pois(out_dir / "pois.csv", ds.pois);

  std::vector<std::vector<std::string>> records;
  records.reserve(ds.listings.rows.size());
  for (std::size_t i = 0; i < ds.listings.rows.size(); ++i) {
    records.push_back({ds.listings.rows[i].listing_id, format_double(ds.f_stat[i]),
                       format_double(ds.f_text[i]), format_double(ds.f_spatial[i]),
                       format_double(ds.noise[i]), format_double(ds.log_price[i])});
  }
  write_csv(out_dir / "latent_scores.csv",
            {"listing_id", "f_stat", "f_text", "f_spatial", "noise", "log_price"}, records);
}

}  // namespace msie
