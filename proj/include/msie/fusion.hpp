#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msie/matrix.hpp"
#include "msie/neural.hpp"
#include "msie/sentiment.hpp"
#include "msie/spatial.hpp"
#include "msie/stat_features.hpp"
#include "msie/target.hpp"
#include "msie/text_embedding.hpp"

namespace msie {

enum class Variant { S, ST, STP };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct FeatureBundle {
  std::vector<std::string> listing_ids;
  Matrix stat;         // S, n x d_s
  Matrix description;  // L, n x 100
  Matrix host_about;   // H, n x 100
  Matrix sentiment;    // R, n x 1
  Matrix spatial;      // P, n x d_p
  std::vector<double> target;  // transformed price
  std::vector<std::string> stat_names;

  // Fixed column order [S | L | H | R | P]; empty blocks contribute nothing.
  Matrix fused() const;
  std::string layout_signature() const;
};

// Aligns every source on the stat matrix's listing order. Throws
// AlignmentError naming ids missing from any source.
FeatureBundle fuse(const StatFeatureMatrix& stat, const TextFeatures& text,
                   const SentimentVector& sentiment, const SpatialFeatures& spatial,
                   const std::vector<std::string>& target_ids,
                   const std::vector<double>& target);

// Drops the blocks outside the variant (ST keeps S,L,H,R; S keeps only S).
FeatureBundle restrict_variant(const FeatureBundle& bundle, Variant variant);

struct RegressorOptions {
  std::size_t epochs = 120;
  std::size_t batch_size = 256;
  double learning_rate = 0.01;
  std::vector<std::size_t> hidden = {128, 64, 64};  // relu stack before the linear output
  bool shuffle = true;
  std::uint64_t seed = 42;
};

struct PriceModel {
  StandardScaler input_scaler;
  DenseNet net;
  std::vector<double> loss_curve;  // per-epoch mean half-MSE
  std::string layout_signature;
  TargetTransform target_transform;
};

// Half-MSE SGD on the standardized fused matrix; deterministic for a seed.
PriceModel train_price_model(const FeatureBundle& train, const RegressorOptions& opts);

struct Predictions {
  std::vector<double> transformed;
  std::vector<double> currency;
};

Predictions predict(const PriceModel& model, const FeatureBundle& rows);

std::string price_model_to_json(const PriceModel& model);
PriceModel price_model_from_json(const std::string& text);

}  // namespace msie
