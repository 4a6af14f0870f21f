#include "msie/spatial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>

#include "msie/csv.hpp"
#include "msie/error.hpp"

namespace msie {

namespace {
constexpr double kDegToRad = 0.017453292519943295;
constexpr double kWeightEps = 1e-6;
}  // namespace

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
  double lat_a = a.latitude * kDegToRad;
  double lat_b = b.latitude * kDegToRad;
  double dlon = (a.longitude - b.longitude) * kDegToRad;
  double cosine =
      std::sin(lat_a) * std::sin(lat_b) + std::cos(lat_a) * std::cos(lat_b) * std::cos(dlon);
  cosine = std::clamp(cosine, -1.0, 1.0);
  return kEarthRadiusKm * std::acos(cosine);
}

SpatialGraph build_spatial_graph(const ListingTable& listings, const PoiTable& pois,
                                 PoiCategory category, double radius_km) {
  if (!(radius_km > 0.0)) throw ConfigError("BadRadius", "radius must be positive");
  SpatialGraph g;
  g.category = category;

  std::vector<const PoiRecord*> cat_pois;
  for (const auto& p : pois.rows)
    if (p.category == category) cat_pois.push_back(&p);
  std::sort(cat_pois.begin(), cat_pois.end(),
            [](const PoiRecord* a, const PoiRecord* b) { return a->poi_id < b->poi_id; });
  for (const auto* p : cat_pois) g.poi_ids.push_back(p->poi_id);

  const std::size_t n = listings.rows.size();
  const std::size_t m = cat_pois.size();
  g.adjacency = Matrix(n, m);
  g.isolated.assign(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& l = listings.rows[i];
    g.listing_ids.push_back(l.listing_id);
    GeoPoint lp{l.latitude, l.longitude};
    for (std::size_t j = 0; j < m; ++j) {
      double d = haversine_km(lp, {cat_pois[j]->latitude, cat_pois[j]->longitude});
      if (d > radius_km) continue;
      double w = std::max(kWeightEps, 1.0 - d / radius_km);
      g.adjacency(i, j) = w;
      g.edges.push_back({i, j, d, w});
      g.isolated[i] = false;
    }
  }
  return g;
}

namespace {

struct FirstOrderTerms {
  std::vector<double> degree;  // D_ii of the projected listing-listing graph
  Matrix lap_y;                // (D - A A^T) Y
  double value = 0.0;          // sum_ij w_ij ||y_i - y_j||^2 = 2 tr(Y' L Y)
};

FirstOrderTerms first_order_terms(const Matrix& adjacency, const Matrix& y) {
  const std::size_t n = adjacency.rows, m = adjacency.cols, k = y.cols;
  FirstOrderTerms t;

  std::vector<double> col_sum(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* a = adjacency.row(i);
    for (std::size_t j = 0; j < m; ++j) col_sum[j] += a[j];
  }
  t.degree.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* a = adjacency.row(i);
    double d = 0.0;
    for (std::size_t j = 0; j < m; ++j) d += a[j] * col_sum[j];
    t.degree[i] = d;
  }

  // At Y = A^T Y (m x k), then W Y = A (A^T Y)
  Matrix aty(m, k);
  for (std::size_t i = 0; i < n; ++i) {
    const double* a = adjacency.row(i);
    const double* yi = y.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      double aij = a[j];
      if (aij == 0.0) continue;
      double* out = aty.row(j);
      for (std::size_t c = 0; c < k; ++c) out[c] += aij * yi[c];
    }
  }
  t.lap_y = Matrix(n, k);
  double tr_dyy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* a = adjacency.row(i);
    const double* yi = y.row(i);
    double* out = t.lap_y.row(i);
    for (std::size_t c = 0; c < k; ++c) out[c] = t.degree[i] * yi[c];
    for (std::size_t j = 0; j < m; ++j) {
      double aij = a[j];
      if (aij == 0.0) continue;
      const double* atyj = aty.row(j);
      for (std::size_t c = 0; c < k; ++c) out[c] -= aij * atyj[c];
    }
    for (std::size_t c = 0; c < k; ++c) tr_dyy += t.degree[i] * yi[c] * yi[c];
  }
  double aty_norm = 0.0;
  for (double v : aty.data) aty_norm += v * v;
  t.value = 2.0 * (tr_dyy - aty_norm);
  return t;
}

double weight_sq_norm(const DenseNet& net) {
  double s = 0.0;
  for (const auto& layer : net.layers)
    for (double w : layer.weights.data) s += w * w;
  return s;
}

}  // namespace

SdneLossParts sdne_loss(const DenseNet& encoder, const DenseNet& decoder, const Matrix& adjacency,
                        const SdneOptions& opts) {
  Matrix y = forward(encoder, adjacency);
  Matrix xhat = forward(decoder, y);

  SdneLossParts parts;
  for (std::size_t i = 0; i < adjacency.data.size(); ++i) {
    double b = adjacency.data[i] != 0.0 ? opts.beta : 1.0;
    double e = (xhat.data[i] - adjacency.data[i]) * b;
    parts.reconstruction += e * e;
  }
  parts.first_order = first_order_terms(adjacency, y).value;
  parts.regularization = 0.5 * (weight_sq_norm(encoder) + weight_sq_norm(decoder));
  parts.total = parts.reconstruction + opts.alpha_first_order * parts.first_order +
                opts.nu * parts.regularization;
  return parts;
}

SdneLossParts sdne_loss_and_grads(const DenseNet& encoder, const DenseNet& decoder,
                                  const Matrix& adjacency, const SdneOptions& opts,
                                  NetGrads& enc_grads, NetGrads& dec_grads) {
  ForwardCache enc_cache, dec_cache;
  Matrix y = forward(encoder, adjacency, &enc_cache);
  Matrix xhat = forward(decoder, y, &dec_cache);

  SdneLossParts parts;
  Matrix d_xhat(xhat.rows, xhat.cols);
  for (std::size_t i = 0; i < adjacency.data.size(); ++i) {
    double b = adjacency.data[i] != 0.0 ? opts.beta : 1.0;
    double diff = xhat.data[i] - adjacency.data[i];
    parts.reconstruction += diff * b * diff * b;
    d_xhat.data[i] = 2.0 * b * b * diff;
  }

  FirstOrderTerms fo = first_order_terms(adjacency, y);
  parts.first_order = fo.value;

  Matrix d_y = backward(decoder, dec_cache, d_xhat, dec_grads);
  const double a4 = 4.0 * opts.alpha_first_order;
  for (std::size_t i = 0; i < d_y.data.size(); ++i) d_y.data[i] += a4 * fo.lap_y.data[i];
  backward(encoder, enc_cache, d_y, enc_grads);

  parts.regularization = 0.5 * (weight_sq_norm(encoder) + weight_sq_norm(decoder));
  // nu * W added to every weight gradient
  auto add_reg = [&](NetGrads& grads, const DenseNet& net) {
    for (std::size_t l = 0; l < net.layers.size(); ++l)
      for (std::size_t i = 0; i < net.layers[l].weights.data.size(); ++i)
        grads.d_weights[l].data[i] += opts.nu * net.layers[l].weights.data[i];
  };
  add_reg(enc_grads, encoder);
  add_reg(dec_grads, decoder);

  parts.total = parts.reconstruction + opts.alpha_first_order * parts.first_order +
                opts.nu * parts.regularization;
  return parts;
}

SdneModel train_sdne(const SpatialGraph& graph, const SdneOptions& opts) {
  const Matrix& adj = graph.adjacency;
  bool any_nonzero = false;
  for (double v : adj.data)
    if (v != 0.0) {
      any_nonzero = true;
      break;
    }
  if (adj.rows == 0 || adj.cols == 0 || !any_nonzero)
    throw DataError("EmptyGraph", "sdne needs at least one nonzero adjacency row");

  Rng rng(opts.seed);
  SdneModel model;
  model.encoder = make_net(adj.cols,
                           {{opts.hidden_dim, Activation::Sigmoid},
                            {opts.embed_dim, Activation::Sigmoid}},
                           rng);
  model.decoder = make_net(opts.embed_dim,
                           {{opts.hidden_dim, Activation::Sigmoid},
                            {adj.cols, Activation::Sigmoid}},
                           rng);

  const double scale = 1.0 / static_cast<double>(adj.rows);  // per-row gradient scale
  for (std::size_t epoch = 0; epoch < opts.epochs; ++epoch) {
    NetGrads enc_grads = zero_grads(model.encoder);
    NetGrads dec_grads = zero_grads(model.decoder);
    SdneLossParts parts = sdne_loss_and_grads(model.encoder, model.decoder, adj, opts,
                                              enc_grads, dec_grads);
    if (!std::isfinite(parts.total))
      throw NumericError("NonFinite", "sdne loss diverged at epoch " + std::to_string(epoch));
    model.total_loss.push_back(parts.total);
    model.reconstruction_loss.push_back(parts.reconstruction);
    sgd_step(model.encoder, enc_grads, opts.learning_rate * scale);
    sgd_step(model.decoder, dec_grads, opts.learning_rate * scale);
  }
  SdneLossParts final_parts = sdne_loss(model.encoder, model.decoder, adj, opts);
  model.total_loss.push_back(final_parts.total);
  model.reconstruction_loss.push_back(final_parts.reconstruction);
  return model;
}

Matrix sdne_embed(const SdneModel& model, const Matrix& adjacency_rows) {
  return forward(model.encoder, adjacency_rows);
}

SpatialFeatures embed_spatial(const ListingTable& listings, const PoiTable& pois,
                              const SpatialConfig& config) {
  const std::size_t n = listings.rows.size();
  const std::size_t dim = config.sdne.embed_dim;

  SpatialFeatures sf;
  sf.listing_ids.reserve(n);
  for (const auto& l : listings.rows) sf.listing_ids.push_back(l.listing_id);
  sf.values = Matrix(n, static_cast<std::size_t>(kPoiCategoryCount) * dim);

  auto run_category = [&](int c) -> Matrix {
    auto category = static_cast<PoiCategory>(c);
    SpatialGraph graph = build_spatial_graph(listings, pois, category, config.radius_km);
    bool any = false;
    for (double v : graph.adjacency.data)
      if (v != 0.0) {
        any = true;
        break;
      }
    if (!any) return {};  // absent or fully out of range: zero block
    SdneOptions opts = config.sdne;
    opts.seed = stage_seed(config.seed, poi_category_names()[static_cast<std::size_t>(c)]);
    SdneModel model = train_sdne(graph, opts);
    return sdne_embed(model, graph.adjacency);
  };

  std::vector<Matrix> blocks(kPoiCategoryCount);
  if (config.parallel_categories) {
    std::vector<std::future<Matrix>> futures;
    futures.reserve(kPoiCategoryCount);
    for (int c = 0; c < kPoiCategoryCount; ++c)
      futures.push_back(std::async(std::launch::async, run_category, c));
    for (int c = 0; c < kPoiCategoryCount; ++c) blocks[static_cast<std::size_t>(c)] = futures[static_cast<std::size_t>(c)].get();
  } else {
    for (int c = 0; c < kPoiCategoryCount; ++c) blocks[static_cast<std::size_t>(c)] = run_category(c);
  }

  for (int c = 0; c < kPoiCategoryCount; ++c) {
    const Matrix& block = blocks[static_cast<std::size_t>(c)];
    if (block.empty()) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < dim; ++k)
        sf.values(i, static_cast<std::size_t>(c) * dim + k) = block(i, k);
  }
  return sf;
}

void write_graph(const std::filesystem::path& path, const SpatialGraph& graph) {
  std::string out = "listing_id\tpoi_id\tdistance_km\tweight\n";
  for (const auto& e : graph.edges) {
    out += graph.listing_ids[e.listing];
    out.push_back('\t');
    out += graph.poi_ids[e.poi];
    out.push_back('\t');
    out += format_double(e.distance_km);
    out.push_back('\t');
    out += format_double(e.weight);
    out.push_back('\n');
  }
  write_file(path, out);
}

void write_spatial_features(const std::filesystem::path& path, const SpatialFeatures& sf) {
  std::string out = "listing_id";
  for (std::size_t k = 0; k < sf.values.cols; ++k) out += "\tp_" + std::to_string(k + 1);
  out.push_back('\n');
  for (std::size_t i = 0; i < sf.listing_ids.size(); ++i) {
    out += sf.listing_ids[i];
    for (std::size_t k = 0; k < sf.values.cols; ++k) {
      out.push_back('\t');
      out += format_double(sf.values(i, k));
    }
    out.push_back('\n');
  }
  write_file(path, out);
}

namespace {

std::vector<std::string> split_on(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(line.substr(start));
      break;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

}  // namespace

SpatialFeatures read_spatial_features(const std::filesystem::path& path) {
  std::string text = read_file(path);
  SpatialFeatures sf;
  std::size_t start = 0;
  bool header = true;
  std::size_t cols = 0;
  while (start < text.size()) {
    std::size_t pos = text.find('\n', start);
    if (pos == std::string::npos) pos = text.size();
    std::string line = text.substr(start, pos - start);
    start = pos + 1;
    if (line.empty()) continue;
    auto parts = split_on(line, '\t');
    if (header) {
      cols = parts.size() - 1;
      header = false;
      continue;
    }
    if (parts.size() != cols + 1) throw DataError("BadRow", line);
    sf.listing_ids.push_back(parts[0]);
    for (std::size_t k = 0; k < cols; ++k) {
      double v;
      auto res = std::from_chars(parts[k + 1].data(), parts[k + 1].data() + parts[k + 1].size(), v);
      if (res.ec != std::errc()) throw DataError("BadNumber", parts[k + 1]);
      sf.values.data.push_back(v);
    }
  }
  sf.values.rows = sf.listing_ids.size();
  sf.values.cols = cols;
  return sf;
}

}  // namespace msie
