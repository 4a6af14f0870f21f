#include "msie/neural.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "msie/error.hpp"

namespace msie {

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::Relu: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Identity: return "identity";
  }
  return "identity";
}

Activation activation_from_name(const std::string& name) {
  if (name == "relu") return Activation::Relu;
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "identity") return Activation::Identity;
  throw DataError("BadCheckpoint", "unknown activation " + name);
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double log_sigmoid(double x) {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

Matrix hcat(const std::vector<const Matrix*>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const Matrix* b : blocks) {
    if (b->empty()) continue;
    if (rows == 0) rows = b->rows;
    if (b->rows != rows) throw DataError("DimensionMismatch", "hcat row counts differ");
    cols += b->cols;
  }
  Matrix out(rows, cols);
  std::size_t off = 0;
  for (const Matrix* b : blocks) {
    if (b->empty()) continue;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < b->cols; ++j) out(i, off + j) = (*b)(i, j);
    off += b->cols;
  }
  return out;
}

namespace {

double activate(Activation a, double x) {
  switch (a) {
    case Activation::Relu: return x > 0.0 ? x : 0.0;
    case Activation::Sigmoid: return sigmoid(x);
    case Activation::Identity: return x;
  }
  return x;
}

// derivative expressed through the activation output
double activate_deriv(Activation a, double pre, double post) {
  switch (a) {
    case Activation::Relu: return pre > 0.0 ? 1.0 : 0.0;
    case Activation::Sigmoid: return post * (1.0 - post);
    case Activation::Identity: return 1.0;
  }
  return 1.0;
}

}  // namespace

DenseNet make_net(std::size_t input_dim, const std::vector<LayerSpec>& specs, Rng& rng) {
  DenseNet net;
  std::size_t in = input_dim;
  for (const auto& spec : specs) {
    DenseLayer layer;
    layer.weights = Matrix(spec.units, in);
    layer.bias.assign(spec.units, 0.0);
    layer.activation = spec.activation;
    double limit = spec.activation == Activation::Relu
                       ? std::sqrt(6.0 / static_cast<double>(in))
                       : std::sqrt(6.0 / static_cast<double>(in + spec.units));
    for (double& w : layer.weights.data) w = rng.uniform(-limit, limit);
    net.layers.push_back(std::move(layer));
    in = spec.units;
  }
  return net;
}

Matrix forward(const DenseNet& net, const Matrix& x, ForwardCache* cache) {
  if (x.cols != net.input_dim())
    throw DataError("DimensionMismatch",
                    "input width " + std::to_string(x.cols) + " != net input " +
                        std::to_string(net.input_dim()));
  if (cache) {
    cache->activations.clear();
    cache->pre_activations.clear();
    cache->activations.push_back(x);
  }
  Matrix cur = x;
  for (const auto& layer : net.layers) {
    const std::size_t n = cur.rows, in = layer.in_dim(), out = layer.out_dim();
    Matrix pre(n, out);
    for (std::size_t i = 0; i < n; ++i) {
      const double* xi = cur.row(i);
      double* pi = pre.row(i);
      for (std::size_t o = 0; o < out; ++o) {
        const double* w = layer.weights.row(o);
        double acc = layer.bias[o];
        for (std::size_t k = 0; k < in; ++k) acc += w[k] * xi[k];
        pi[o] = acc;
      }
    }
    Matrix post(n, out);
    for (std::size_t i = 0; i < pre.data.size(); ++i)
      post.data[i] = activate(layer.activation, pre.data[i]);
    if (cache) {
      cache->pre_activations.push_back(pre);
      cache->activations.push_back(post);
    }
    cur = std::move(post);
  }
  return cur;
}

NetGrads zero_grads(const DenseNet& net) {
  NetGrads g;
  for (const auto& layer : net.layers) {
    g.d_weights.emplace_back(layer.out_dim(), layer.in_dim());
    g.d_bias.emplace_back(layer.out_dim(), 0.0);
  }
  return g;
}

void accumulate_scaled(NetGrads& acc, const NetGrads& g, double scale) {
  for (std::size_t l = 0; l < acc.d_weights.size(); ++l) {
    for (std::size_t i = 0; i < acc.d_weights[l].data.size(); ++i)
      acc.d_weights[l].data[i] += scale * g.d_weights[l].data[i];
    for (std::size_t i = 0; i < acc.d_bias[l].size(); ++i)
      acc.d_bias[l][i] += scale * g.d_bias[l][i];
  }
}

Matrix backward(const DenseNet& net, const ForwardCache& cache, const Matrix& loss_grad,
                NetGrads& grads) {
  if (cache.activations.size() != net.layers.size() + 1)
    throw DataError("DimensionMismatch", "cache does not match net");
  if (loss_grad.rows != cache.activations.back().rows ||
      loss_grad.cols != cache.activations.back().cols)
    throw DataError("DimensionMismatch", "loss gradient shape");

  Matrix delta = loss_grad;
  for (std::size_t li = net.layers.size(); li-- > 0;) {
    const DenseLayer& layer = net.layers[li];
    const Matrix& pre = cache.pre_activations[li];
    const Matrix& post = cache.activations[li + 1];
    const Matrix& input = cache.activations[li];
    const std::size_t n = delta.rows, in = layer.in_dim(), out = layer.out_dim();

    // chain through the activation
    for (std::size_t i = 0; i < delta.data.size(); ++i)
      delta.data[i] *= activate_deriv(layer.activation, pre.data[i], post.data[i]);

    Matrix& dW = grads.d_weights[li];
    auto& db = grads.d_bias[li];
    for (std::size_t i = 0; i < n; ++i) {
      const double* d = delta.row(i);
      const double* xi = input.row(i);
      for (std::size_t o = 0; o < out; ++o) {
        double g = d[o];
        if (g == 0.0) continue;
        double* wrow = dW.row(o);
        for (std::size_t k = 0; k < in; ++k) wrow[k] += g * xi[k];
        db[o] += g;
      }
    }

    Matrix next(n, in);
    for (std::size_t i = 0; i < n; ++i) {
      const double* d = delta.row(i);
      double* nd = next.row(i);
      for (std::size_t o = 0; o < out; ++o) {
        double g = d[o];
        if (g == 0.0) continue;
        const double* w = layer.weights.row(o);
        for (std::size_t k = 0; k < in; ++k) nd[k] += g * w[k];
      }
    }
    delta = std::move(next);
  }
  return delta;
}

void sgd_step(DenseNet& net, const NetGrads& grads, double lr) {
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    auto& layer = net.layers[l];
    const auto& dW = grads.d_weights[l];
    if (dW.rows != layer.weights.rows || dW.cols != layer.weights.cols)
      throw DataError("DimensionMismatch", "gradient shape");
    for (std::size_t i = 0; i < layer.weights.data.size(); ++i)
      layer.weights.data[i] -= lr * dW.data[i];
    for (std::size_t i = 0; i < layer.bias.size(); ++i)
      layer.bias[i] -= lr * grads.d_bias[l][i];
  }
}

double grad_check(DenseNet& net, const Matrix& x,
                  const std::function<double(const Matrix&)>& loss,
                  const std::function<Matrix(const Matrix&)>& loss_grad, double eps) {
  ForwardCache cache;
  Matrix out = forward(net, x, &cache);
  NetGrads analytic = zero_grads(net);
  backward(net, cache, loss_grad(out), analytic);

  double max_rel = 0.0;
  auto probe = [&](double& param, double analytic_g) {
    const double saved = param;
    param = saved + eps;
    double lp = loss(forward(net, x));
    param = saved - eps;
    double lm = loss(forward(net, x));
    param = saved;
    double numeric = (lp - lm) / (2.0 * eps);
    double denom = std::max({std::abs(analytic_g), std::abs(numeric), 1e-8});
    double rel = std::abs(analytic_g - numeric) / denom;
    if (rel > max_rel) max_rel = rel;
  };
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    auto& layer = net.layers[l];
    for (std::size_t i = 0; i < layer.weights.data.size(); ++i)
      probe(layer.weights.data[i], analytic.d_weights[l].data[i]);
    for (std::size_t i = 0; i < layer.bias.size(); ++i)
      probe(layer.bias[i], analytic.d_bias[l][i]);
  }
  return max_rel;
}

std::string net_to_json(const DenseNet& net) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : net.layers) {
    layers.push_back({{"in", layer.in_dim()},
                      {"out", layer.out_dim()},
                      {"activation", activation_name(layer.activation)},
                      {"weights", layer.weights.data},
                      {"bias", layer.bias}});
  }
  return nlohmann::json{{"layers", layers}}.dump(2);
}

DenseNet net_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  DenseNet net;
  for (const auto& jl : j.at("layers")) {
    DenseLayer layer;
    std::size_t in = jl.at("in").get<std::size_t>();
    std::size_t out = jl.at("out").get<std::size_t>();
    layer.weights = Matrix(out, in);
    layer.weights.data = jl.at("weights").get<std::vector<double>>();
    if (layer.weights.data.size() != in * out)
      throw DataError("BadCheckpoint", "weight array size mismatch");
    layer.bias = jl.at("bias").get<std::vector<double>>();
    if (layer.bias.size() != out) throw DataError("BadCheckpoint", "bias size mismatch");
    layer.activation = activation_from_name(jl.at("activation").get<std::string>());
    net.layers.push_back(std::move(layer));
  }
  if (net.layers.empty()) throw DataError("BadCheckpoint", "no layers");
  return net;
}

}  // namespace msie
