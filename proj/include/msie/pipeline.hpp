#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msie/corpus_io.hpp"
#include "msie/fusion.hpp"
#include "msie/metrics.hpp"
#include "msie/sentiment.hpp"
#include "msie/spatial.hpp"
#include "msie/stat_features.hpp"
#include "msie/text_embedding.hpp"

namespace msie {

struct PipelineOptions {
  double split_ratio = 0.8;
  double missing_threshold = 0.3;

  std::string selection = "lasso";  // lasso | pvalue | manual
  std::size_t lasso_folds = 5;
  std::size_t lasso_grid_size = 50;
  double lasso_grid_decades = 4.0;
  LassoOptions lasso;
  std::size_t pvalue_top_k = 20;
  std::vector<std::string> manual_columns;

  CbowOptions cbow;
  std::vector<std::vector<std::string>> text_corpus;  // empty -> listing texts
  double nb_smoothing = 1.0;
  std::vector<LabeledDoc> labeled_corpus;  // empty -> builtin lexicon

  SpatialConfig spatial;
  RegressorOptions regressor;

  std::uint64_t seed = 42;
};

// Everything the regressor stages consume, plus the fitted artifacts the CLI
// persists. Stage seeds derive from `seed` by stage name.
struct PipelineFeatures {
  ListingTable train;
  ListingTable test;
  TargetTransform target;

  StatPreprocess prep;
  StandardScaler stat_scaler;
  std::optional<LassoCvResult> lasso;
  std::vector<PValueEntry> pvalues;
  bool empty_selection_fallback = false;
  StatFeatureMatrix stat_train;
  StatFeatureMatrix stat_test;

  Vocab vocab;
  WordVectors word_vectors;
  TextFeatures text_train;
  TextFeatures text_test;

  NbModel nb;
  SentimentVector sentiment_train;
  SentimentVector sentiment_test;

  SpatialFeatures spatial_train;
  SpatialFeatures spatial_test;

  FeatureBundle bundle_train;
  FeatureBundle bundle_test;
  std::vector<double> test_prices;  // currency, for the secondary MAE
};

PipelineFeatures build_features(const ListingTable& listings, const ReviewTable& reviews,
                                const PoiTable& pois, const PipelineOptions& opts);

struct AblationEntry {
  MetricReport report;
  double mae_currency = 0.0;
  std::vector<double> loss_curve;
  std::string error;  // non-empty when this variant failed
};

std::vector<AblationEntry> run_ablation(const PipelineFeatures& features,
                                        const std::vector<Variant>& variants,
                                        const PipelineOptions& opts);

std::string ablation_report_json(const std::vector<AblationEntry>& entries);
std::string ablation_report_csv(const std::vector<AblationEntry>& entries);
std::string metric_report_json(const MetricReport& report, double mae_currency);

}  // namespace msie
