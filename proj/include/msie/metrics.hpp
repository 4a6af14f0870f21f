#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace msie {

double mae(std::span<const double> y_hat, std::span<const double> y);
double mse(std::span<const double> y_hat, std::span<const double> y);
double rmse(std::span<const double> y_hat, std::span<const double> y);
// R^2 = 1 - SSR/SST; throws ConstantTarget when y has zero variance.
double r2(std::span<const double> y_hat, std::span<const double> y);

struct MetricReport {
  std::string variant;
  double mae = 0.0;
  double mse = 0.0;
  double rmse = 0.0;
  double r2 = 0.0;
  std::size_t n = 0;
};

MetricReport evaluate_metrics(std::span<const double> y_hat, std::span<const double> y,
                              std::string variant);

}  // namespace msie
