#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "msie/pipeline.hpp"
#include "msie/synth.hpp"

namespace msie {

// Effective CLI configuration: every field has a default so an empty config
// runs end to end on synthetic data. Unknown keys are rejected with their
// dotted path.
struct CliConfig {
  std::string listings = "listings.csv";   // relative paths resolve in out_dir
  std::string reviews = "reviews.csv";
  std::string pois = "pois.csv";
  std::string labeled_corpus;               // empty -> builtin lexicon
  std::string text_corpus;                  // empty -> listing texts

  std::string out_dir = "out";
  std::uint64_t seed = 42;
  double split_ratio = 0.8;
  double missing_threshold = 0.3;
  std::string selection = "lasso";

  std::size_t lasso_folds = 5;
  std::size_t lasso_grid_size = 50;
  double lasso_grid_decades = 4.0;
  double lasso_tol = 1e-6;
  std::size_t lasso_max_sweeps = 10000;
  std::size_t pvalue_top_k = 20;
  std::vector<std::string> manual_columns;

  CbowOptions cbow;
  double nb_smoothing = 1.0;
  SpatialConfig spatial;
  RegressorOptions regressor;
  std::vector<std::string> ablation_variants = {"S", "ST", "STP"};
  SynthConfig synth;
};

CliConfig parse_config_json(const std::string& text);
CliConfig load_config(const std::filesystem::path& path);

// Canonical JSON of the effective config (all defaults applied); hashing this
// fingerprints a run.
std::string config_canonical_json(const CliConfig& config);

PipelineOptions to_pipeline_options(const CliConfig& config);

// Input path resolution: absolute or cwd-relative if it exists, otherwise
// relative to out_dir (where `synth` writes).
std::filesystem::path resolve_input(const CliConfig& config, const std::string& name);

}  // namespace msie
