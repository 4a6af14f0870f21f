#include "msie/target.hpp"

#include <cmath>

#include "msie/error.hpp"

namespace msie {

double TargetTransform::apply_price(double price) const {
  return (std::log10(price) - mu) / sigma;
}

double TargetTransform::invert(double transformed) const {
  return std::pow(10.0, mu + sigma * transformed);
}

TargetTransform fit_target_transform(std::span<const double> train_prices) {
  if (train_prices.empty()) throw DataError("Empty", "target transform needs prices");
  double mean = 0.0;
  for (double p : train_prices) {
    if (!(p > 0.0)) throw DataError("RangeViolation", "price must be positive");
    mean += std::log10(p);
  }
  mean /= static_cast<double>(train_prices.size());
  double var = 0.0;
  for (double p : train_prices) {
    double d = std::log10(p) - mean;
    var += d * d;
  }
  var /= static_cast<double>(train_prices.size());
  TargetTransform t;
  t.mu = mean;
  t.sigma = var > 0.0 ? std::sqrt(var) : 1.0;
  return t;
}

std::vector<double> apply_target_transform(const TargetTransform& t,
                                           std::span<const double> prices) {
  std::vector<double> out;
  out.reserve(prices.size());
  for (double p : prices) out.push_back(t.apply_price(p));
  return out;
}

}  // namespace msie
