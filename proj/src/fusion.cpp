#include "msie/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "msie/error.hpp"

namespace msie {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::S: return "S";
    case Variant::ST: return "ST";
    case Variant::STP: return "STP";
  }
  return "STP";
}

Variant variant_from_name(const std::string& name) {
  if (name == "S") return Variant::S;
  if (name == "ST") return Variant::ST;
  if (name == "STP") return Variant::STP;
  throw ConfigError("BadVariant", name + " (expected S, ST or STP)");
}

Matrix FeatureBundle::fused() const {
  return hcat({&stat, &description, &host_about, &sentiment, &spatial});
}

std::string FeatureBundle::layout_signature() const {
  return "S:" + std::to_string(stat.cols) + "|L:" + std::to_string(description.cols) +
         "|H:" + std::to_string(host_about.cols) + "|R:" + std::to_string(sentiment.cols) +
         "|P:" + std::to_string(spatial.cols);
}

namespace {

std::unordered_map<std::string, std::size_t> index_ids(const std::vector<std::string>& ids) {
  std::unordered_map<std::string, std::size_t> map;
  map.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) map.emplace(ids[i], i);
  return map;
}

Matrix gather_rows(const Matrix& src, const std::vector<std::size_t>& rows) {
  Matrix out(rows.size(), src.cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::copy(src.row(rows[i]), src.row(rows[i]) + src.cols, out.row(i));
  return out;
}

}  // namespace

FeatureBundle fuse(const StatFeatureMatrix& stat, const TextFeatures& text,
                   const SentimentVector& sentiment, const SpatialFeatures& spatial,
                   const std::vector<std::string>& target_ids,
                   const std::vector<double>& target) {
  auto text_idx = index_ids(text.listing_ids);
  auto senti_idx = index_ids(sentiment.listing_ids);
  auto spatial_idx = index_ids(spatial.listing_ids);
  auto target_idx = index_ids(target_ids);

  std::vector<std::string> missing;
  auto resolve = [&](const std::unordered_map<std::string, std::size_t>& idx,
                     const std::string& id, const char* source) -> std::size_t {
    auto it = idx.find(id);
    if (it == idx.end()) {
      missing.push_back(std::string(source) + ":" + id);
      return 0;
    }
    return it->second;
  };

  FeatureBundle b;
  b.listing_ids = stat.listing_ids;
  b.stat_names = stat.column_names;
  b.stat = stat.values;

  const std::size_t n = stat.listing_ids.size();
  std::vector<std::size_t> text_rows(n), senti_rows(n), spatial_rows(n), target_rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& id = stat.listing_ids[i];
    text_rows[i] = resolve(text_idx, id, "text");
    senti_rows[i] = resolve(senti_idx, id, "sentiment");
    spatial_rows[i] = resolve(spatial_idx, id, "spatial");
    target_rows[i] = resolve(target_idx, id, "target");
  }
  if (!missing.empty()) {
    std::string msg = missing[0];
    for (std::size_t i = 1; i < std::min<std::size_t>(missing.size(), 5); ++i)
      msg += ", " + missing[i];
    if (missing.size() > 5) msg += ", ... (" + std::to_string(missing.size()) + " total)";
    throw DataError("AlignmentError", msg);
  }

  b.description = gather_rows(text.description_vectors, text_rows);
  b.host_about = gather_rows(text.host_about_vectors, text_rows);
  b.sentiment = Matrix(n, 1);
  for (std::size_t i = 0; i < n; ++i) b.sentiment(i, 0) = sentiment.scores[senti_rows[i]];
  b.spatial = gather_rows(spatial.values, spatial_rows);
  b.target.resize(n);
  for (std::size_t i = 0; i < n; ++i) b.target[i] = target[target_rows[i]];
  return b;
}

FeatureBundle restrict_variant(const FeatureBundle& bundle, Variant variant) {
  FeatureBundle out = bundle;
  if (variant == Variant::S) {
    out.description = Matrix();
    out.host_about = Matrix();
    out.sentiment = Matrix();
  }
  if (variant != Variant::STP) out.spatial = Matrix();
  return out;
}

PriceModel train_price_model(const FeatureBundle& train, const RegressorOptions& opts) {
  if (opts.epochs < 1) throw ConfigError("BadEpochs", "need epochs >= 1");
  if (opts.batch_size < 1) throw ConfigError("BadBatch", "need batch_size >= 1");

  Matrix m = train.fused();
  const std::size_t n = m.rows;
  if (n == 0) throw DataError("Empty", "no training rows");
  if (train.target.size() != n) throw DataError("LengthMismatch", "targets != rows");

  PriceModel model;
  model.layout_signature = train.layout_signature();
  model.input_scaler = fit_standardizer(m);
  Matrix x = model.input_scaler.transform(m);

  Rng rng(opts.seed);
  std::vector<LayerSpec> specs;
  for (std::size_t units : opts.hidden) specs.push_back({units, Activation::Relu});
  specs.push_back({1, Activation::Identity});
  model.net = make_net(x.cols, specs, rng);

  const std::size_t batch = std::min(opts.batch_size, n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  for (std::size_t epoch = 0; epoch < opts.epochs; ++epoch) {
    if (opts.shuffle) {
      for (std::size_t i = n; i > 1; --i) {
        std::size_t j = rng.uniform_index(i);
        std::swap(order[i - 1], order[j]);
      }
    }
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t b = std::min(batch, n - start);
      Matrix xb(b, x.cols);
      std::vector<double> yb(b);
      for (std::size_t i = 0; i < b; ++i) {
        std::size_t src = order[start + i];
        std::copy(x.row(src), x.row(src) + x.cols, xb.row(i));
        yb[i] = train.target[src];
      }
      ForwardCache cache;
      Matrix out = forward(model.net, xb, &cache);
      Matrix d_out(b, 1);
      double batch_loss = 0.0;
      for (std::size_t i = 0; i < b; ++i) {
        double e = out(i, 0) - yb[i];
        batch_loss += 0.5 * e * e;
        d_out(i, 0) = e / static_cast<double>(b);
      }
      batch_loss /= static_cast<double>(b);
      if (!std::isfinite(batch_loss))
        throw NumericError("NonFinite", "regressor loss diverged at epoch " +
                                            std::to_string(epoch));
      loss_sum += batch_loss * static_cast<double>(b);
      NetGrads grads = zero_grads(model.net);
      backward(model.net, cache, d_out, grads);
      sgd_step(model.net, grads, opts.learning_rate);
    }
    model.loss_curve.push_back(loss_sum / static_cast<double>(n));
  }
  return model;
}

Predictions predict(const PriceModel& model, const FeatureBundle& rows) {
  if (rows.layout_signature() != model.layout_signature)
    throw DataError("DimensionMismatch", "bundle layout " + rows.layout_signature() +
                                             " does not match model " + model.layout_signature);
  Matrix x = model.input_scaler.transform(rows.fused());
  Matrix out = forward(model.net, x);
  Predictions p;
  p.transformed.reserve(out.rows);
  p.currency.reserve(out.rows);
  for (std::size_t i = 0; i < out.rows; ++i) {
    p.transformed.push_back(out(i, 0));
    p.currency.push_back(model.target_transform.invert(out(i, 0)));
  }
  return p;
}

std::string price_model_to_json(const PriceModel& model) {
  nlohmann::json j{{"net", nlohmann::json::parse(net_to_json(model.net))},
                   {"scaler",
                    {{"means", model.input_scaler.means},
                     {"stdevs", model.input_scaler.stdevs}}},
                   {"layout_signature", model.layout_signature},
                   {"target_transform", "standardized-log10"},
                   {"target_mu", model.target_transform.mu},
                   {"target_sigma", model.target_transform.sigma},
                   {"loss_curve", model.loss_curve}};
  return j.dump(2);
}

PriceModel price_model_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PriceModel model;
  model.net = net_from_json(j.at("net").dump());
  model.input_scaler.means = j.at("scaler").at("means").get<std::vector<double>>();
  model.input_scaler.stdevs = j.at("scaler").at("stdevs").get<std::vector<double>>();
  for (std::size_t i = 0; i < model.input_scaler.stdevs.size(); ++i)
    if (model.input_scaler.stdevs[i] == 0.0) model.input_scaler.constant_columns.push_back(i);
  model.layout_signature = j.at("layout_signature").get<std::string>();
  model.target_transform.mu = j.at("target_mu").get<double>();
  model.target_transform.sigma = j.at("target_sigma").get<double>();
  model.loss_curve = j.at("loss_curve").get<std::vector<double>>();
  return model;
}

}  // namespace msie
