#include "msie/metrics.hpp"

#include <cmath>

#include "msie/error.hpp"

namespace msie {

namespace {
void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DataError("LengthMismatch", "prediction/target sizes differ");
  if (a.empty()) throw DataError("Empty", "metric over empty vectors");
}
}  // namespace

double mae(std::span<const double> y_hat, std::span<const double> y) {
  check_lengths(y_hat, y);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::abs(y_hat[i] - y[i]);
  return s / static_cast<double>(y.size());
}

double mse(std::span<const double> y_hat, std::span<const double> y) {
  check_lengths(y_hat, y);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double e = y_hat[i] - y[i];
    s += e * e;
  }
  return s / static_cast<double>(y.size());
}

double rmse(std::span<const double> y_hat, std::span<const double> y) {
  return std::sqrt(mse(y_hat, y));
}

double r2(std::span<const double> y_hat, std::span<const double> y) {
  check_lengths(y_hat, y);
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ssr = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double e = y_hat[i] - y[i];
    double d = mean - y[i];
    ssr += e * e;
    sst += d * d;
  }
  if (sst == 0.0) throw DataError("ConstantTarget", "R^2 undefined for constant target");
  return 1.0 - ssr / sst;
}

MetricReport evaluate_metrics(std::span<const double> y_hat, std::span<const double> y,
                              std::string variant) {
  MetricReport r;
  r.variant = std::move(variant);
  r.mae = mae(y_hat, y);
  r.mse = mse(y_hat, y);
  r.rmse = std::sqrt(r.mse);
  r.r2 = r2(y_hat, y);
  r.n = y.size();
  return r;
}

}  // namespace msie
