#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "msie/corpus_io.hpp"
#include "msie/matrix.hpp"
#include "msie/neural.hpp"

namespace msie {

inline constexpr double kEarthRadiusKm = 6371.004;

struct GeoPoint {
  double latitude = 0.0;
  double longitude = 0.0;
};

// Great-circle distance: R * arccos(clamped spherical cosine), coordinates
// converted to radians first.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

struct SpatialGraph {
  PoiCategory category = PoiCategory::Education;
  std::vector<std::string> listing_ids;
  std::vector<std::string> poi_ids;  // sorted; fixes the adjacency column order
  struct Edge {
    std::size_t listing = 0;
    std::size_t poi = 0;
    double distance_km = 0.0;
    double weight = 0.0;  // 1 - d/radius, clamped to (eps, 1]
  };
  std::vector<Edge> edges;
  Matrix adjacency;  // n_listings x n_pois, weights
  std::vector<bool> isolated;  // listings with no in-radius POI
};

// Edge iff distance <= radius_km; pois outside `category` are ignored.
SpatialGraph build_spatial_graph(const ListingTable& listings, const PoiTable& pois,
                                 PoiCategory category, double radius_km = 1.0);

struct SdneOptions {
  std::size_t embed_dim = 16;
  std::size_t hidden_dim = 64;
  std::size_t epochs = 50;
  double alpha_first_order = 0.05;
  double beta = 5.0;   // reconstruction emphasis on nonzero entries
  double nu = 1e-4;    // L2 penalty on weights
  double learning_rate = 0.01;
  std::uint64_t seed = 42;
};

struct SdneModel {
  DenseNet encoder;  // adj_row -> hidden -> embedding, sigmoid throughout
  DenseNet decoder;  // embedding -> hidden -> adj_row
  std::vector<double> total_loss;  // index e = loss after e update epochs
  std::vector<double> reconstruction_loss;
};

struct SdneLossParts {
  double total = 0.0;
  double reconstruction = 0.0;
  double first_order = 0.0;
  double regularization = 0.0;
};

// Loss over the whole graph:
//   sum_i ||(xhat_i - x_i) . b_i||^2
// + alpha * sum_ij w_ij ||y_i - y_j||^2      (w = A A^T, listing-listing)
// + nu * 1/2 sum ||W||_F^2
SdneLossParts sdne_loss(const DenseNet& encoder, const DenseNet& decoder, const Matrix& adjacency,
                        const SdneOptions& opts);
SdneLossParts sdne_loss_and_grads(const DenseNet& encoder, const DenseNet& decoder,
                                  const Matrix& adjacency, const SdneOptions& opts,
                                  NetGrads& enc_grads, NetGrads& dec_grads);

SdneModel train_sdne(const SpatialGraph& graph, const SdneOptions& opts);

Matrix sdne_embed(const SdneModel& model, const Matrix& adjacency_rows);

struct SpatialConfig {
  double radius_km = 1.0;
  SdneOptions sdne;
  bool parallel_categories = true;
  std::uint64_t seed = 42;
};

struct SpatialFeatures {
  std::vector<std::string> listing_ids;
  Matrix values;  // n x (8 * embed_dim), fixed category order
};

// One graph + one SDNE model per present POI category; absent categories
// contribute zero blocks. Per-category trainings are independent and may run
// in parallel without affecting the result.
SpatialFeatures embed_spatial(const ListingTable& listings, const PoiTable& pois,
                              const SpatialConfig& config);

void write_graph(const std::filesystem::path& path, const SpatialGraph& graph);

void write_spatial_features(const std::filesystem::path& path, const SpatialFeatures& sf);
SpatialFeatures read_spatial_features(const std::filesystem::path& path);

}  // namespace msie
