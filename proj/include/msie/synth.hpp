#pragma once

#include <cstdint>
#include <filesystem>

#include "msie/corpus_io.hpp"

namespace msie {

// Synthetic dataset with a known pricing function:
//   price = exp(base + stat_w*f_stat + text_w*f_text + spatial_w*f_spatial + noise)
// f_stat is a linear form over generated stat columns, f_text drives both
// polarity-bearing description tokens and review polarity, f_spatial is the
// per-category weighted count of in-radius POIs. Latents are persisted for
// audit as latent_scores.csv.
struct SynthConfig {
  std::size_t n_listings = 2000;
  std::size_t n_pois_per_category = 400;
  std::size_t min_reviews = 1;
  std::size_t max_reviews = 10;
  std::uint64_t seed = 42;
  double stat_w = 0.9;
  double text_w = 0.8;
  double spatial_w = 0.8;
  double noise_sd = 0.45;
};

struct SynthDataset {
  ListingTable listings;
  ReviewTable reviews;
  PoiTable pois;
  std::vector<double> f_stat;
  std::vector<double> f_text;
  std::vector<double> f_spatial;
  std::vector<double> noise;
  std::vector<double> log_price;
};

SynthDataset synth_dataset(const SynthConfig& config);

// Writes listings.csv, reviews.csv, pois.csv and latent_scores.csv.
void synth_generate(const SynthConfig& config, const std::filesystem::path& out_dir);

}  // namespace msie
