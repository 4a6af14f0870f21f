#pragma once

#include <span>
#include <vector>

namespace msie {

// Target transform used throughout: standardized log10(price), fit on the
// training split only. Predictions map back to currency via invert().
struct TargetTransform {
  double mu = 0.0;
  double sigma = 1.0;

  double apply_price(double price) const;
  double invert(double transformed) const;  // -> currency
};

TargetTransform fit_target_transform(std::span<const double> train_prices);
std::vector<double> apply_target_transform(const TargetTransform& t,
                                           std::span<const double> prices);

}  // namespace msie
