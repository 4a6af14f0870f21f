#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "msie/matrix.hpp"
#include "msie/rng.hpp"

namespace msie {

enum class Activation { Relu, Sigmoid, Identity };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

double sigmoid(double x);       // numerically stable branch
double log_sigmoid(double x);   // log(sigmoid(x)) without overflow

struct DenseLayer {
  Matrix weights;  // out x in
  std::vector<double> bias;
  Activation activation = Activation::Identity;

  std::size_t in_dim() const { return weights.cols; }
  std::size_t out_dim() const { return weights.rows; }
};

struct DenseNet {
  std::vector<DenseLayer> layers;

  std::size_t input_dim() const { return layers.front().in_dim(); }
  std::size_t output_dim() const { return layers.back().out_dim(); }
};

struct LayerSpec {
  std::size_t units = 0;
  Activation activation = Activation::Identity;
};

// He-uniform init for relu layers, Xavier-uniform otherwise; biases zero.
DenseNet make_net(std::size_t input_dim, const std::vector<LayerSpec>& specs, Rng& rng);

struct ForwardCache {
  // activations[0] is the input batch; activations[k+1] the output of layer k.
  std::vector<Matrix> activations;
  std::vector<Matrix> pre_activations;
};

// X is a batch (rows = samples). Throws DimensionMismatch on bad input width.
Matrix forward(const DenseNet& net, const Matrix& x, ForwardCache* cache = nullptr);

struct NetGrads {
  std::vector<Matrix> d_weights;
  std::vector<std::vector<double>> d_bias;
};

NetGrads zero_grads(const DenseNet& net);
void accumulate_scaled(NetGrads& acc, const NetGrads& g, double scale);

// loss_grad has one row per sample (dL/d y_hat). Gradients are summed over
// the batch; returns dL/dX for chaining through stacked nets.
Matrix backward(const DenseNet& net, const ForwardCache& cache, const Matrix& loss_grad,
                NetGrads& grads);

void sgd_step(DenseNet& net, const NetGrads& grads, double lr);

// Central finite differences of loss(forward(net, x)) against the analytic
// gradient; returns the max relative error over every weight and bias.
double grad_check(DenseNet& net, const Matrix& x,
                  const std::function<double(const Matrix&)>& loss,
                  const std::function<Matrix(const Matrix&)>& loss_grad, double eps);

std::string net_to_json(const DenseNet& net);
DenseNet net_from_json(const std::string& text);

}  // namespace msie
