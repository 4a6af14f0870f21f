#include "msie/stat_features.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>
#include <nlohmann/json.hpp>

#include "msie/error.hpp"

namespace msie {

StatPreprocess fit_stat_preprocess(const ListingTable& train, double missing_threshold) {
  const std::size_t n = train.rows.size();
  const std::size_t d = train.stat_columns.size();
  StatPreprocess prep;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> present;
    present.reserve(n);
    for (const auto& row : train.rows) {
      if (j < row.raw_stats.size() && row.raw_stats[j]) present.push_back(*row.raw_stats[j]);
    }
    double missing_frac =
        n == 0 ? 1.0 : 1.0 - static_cast<double>(present.size()) / static_cast<double>(n);
    if (missing_frac > missing_threshold || present.empty()) {
      prep.dropped_columns.push_back(train.stat_columns[j]);
      continue;
    }
    std::sort(present.begin(), present.end());
    std::size_t m = present.size();
    double median = (m % 2 == 1) ? present[m / 2]
                                 : 0.5 * (present[m / 2 - 1] + present[m / 2]);
    prep.kept_columns.push_back(train.stat_columns[j]);
    prep.kept_indices.push_back(j);
    prep.medians.push_back(median);
  }
  return prep;
}

StatFeatureMatrix apply_stat_preprocess(const StatPreprocess& prep, const ListingTable& table) {
  StatFeatureMatrix out;
  out.column_names = prep.kept_columns;
  out.listing_ids.reserve(table.rows.size());
  out.values = Matrix(table.rows.size(), prep.kept_columns.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    out.listing_ids.push_back(row.listing_id);
    for (std::size_t jj = 0; jj < prep.kept_indices.size(); ++jj) {
      std::size_t j = prep.kept_indices[jj];
      const auto& cell = j < row.raw_stats.size() ? row.raw_stats[j] : std::nullopt;
      out.values(i, jj) = cell ? *cell : prep.medians[jj];
    }
  }
  return out;
}

StandardScaler fit_standardizer(const Matrix& x) {
  if (x.rows < 2) throw DataError("TooFewRows", "standardizer needs n >= 2");
  StandardScaler s;
  s.means.resize(x.cols);
  s.stdevs.resize(x.cols);
  std::size_t n_constant = 0;
  for (std::size_t j = 0; j < x.cols; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) mean += x(i, j);
    mean /= static_cast<double>(x.rows);
    double var = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
      double d = x(i, j) - mean;
      var += d * d;
    }
    var /= static_cast<double>(x.rows);
    s.means[j] = mean;
    s.stdevs[j] = var > 0.0 ? std::sqrt(var) : 0.0;
    if (s.stdevs[j] == 0.0) {
      s.constant_columns.push_back(j);
      ++n_constant;
    }
  }
  if (x.cols > 0 && n_constant == x.cols)
    throw DataError("AllConstant", "every column has zero variance");
  return s;
}

Matrix StandardScaler::transform(const Matrix& x) const {
  if (x.cols != means.size()) throw DataError("DimensionMismatch", "scaler column count");
  Matrix out(x.rows, x.cols);
  for (std::size_t j = 0; j < x.cols; ++j) {
    double mean = means[j];
    double scale = stdevs[j] > 0.0 ? 1.0 / stdevs[j] : 0.0;  // constant columns map to 0
    for (std::size_t i = 0; i < x.rows; ++i) out(i, j) = (x(i, j) - mean) * scale;
  }
  return out;
}

namespace {

double soft_threshold(double v, double alpha) {
  if (v > alpha) return v - alpha;
  if (v < -alpha) return v + alpha;
  return 0.0;
}

void check_finite(const Matrix& x, const std::vector<double>& y) {
  for (double v : x.data)
    if (!std::isfinite(v)) throw NumericError("NonFinite", "design matrix");
  for (double v : y)
    if (!std::isfinite(v)) throw NumericError("NonFinite", "target vector");
}

struct CenteredProblem {
  std::vector<double> col_means;
  double y_mean = 0.0;
  Matrix gram;              // d x d
  std::vector<double> xty;  // d
  double yty = 0.0;
};

CenteredProblem center_problem(const Matrix& x, const std::vector<double>& y,
                               bool fit_intercept) {
  const std::size_t n = x.rows, d = x.cols;
  CenteredProblem p;
  p.col_means.assign(d, 0.0);
  if (fit_intercept) {
    for (std::size_t j = 0; j < d; ++j) {
      double m = 0.0;
      for (std::size_t i = 0; i < n; ++i) m += x(i, j);
      p.col_means[j] = m / static_cast<double>(n);
    }
    for (double v : y) p.y_mean += v;
    p.y_mean /= static_cast<double>(n);
  }
  p.gram = Matrix(d, d);
  p.xty.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double yc = y[i] - p.y_mean;
    p.yty += yc * yc;
    for (std::size_t j = 0; j < d; ++j) {
      double xj = x(i, j) - p.col_means[j];
      p.xty[j] += xj * yc;
      for (std::size_t k = j; k < d; ++k)
        p.gram(j, k) += xj * (x(i, k) - p.col_means[k]);
    }
  }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < j; ++k) p.gram(j, k) = p.gram(k, j);
  return p;
}

}  // namespace

LassoModel lasso_fit(const Matrix& x, const std::vector<double>& y, double alpha,
                     const LassoOptions& opts) {
  if (x.rows != y.size()) throw DataError("LengthMismatch", "rows != targets");
  if (x.rows == 0) throw DataError("Empty", "no rows");
  if (alpha < 0.0) throw ConfigError("BadAlpha", "alpha must be >= 0");
  check_finite(x, y);

  const std::size_t d = x.cols;
  CenteredProblem p = center_problem(x, y, opts.fit_intercept);

  LassoModel model;
  model.alpha = alpha;
  model.weights.assign(d, 0.0);

  auto objective = [&](const std::vector<double>& w) {
    // 1/2 (y'y - 2 w.c + w'Gw) + alpha |w|_1 on the centered problem
    double quad = 0.0, lin = 0.0, l1 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      lin += w[j] * p.xty[j];
      l1 += std::abs(w[j]);
      double gw = 0.0;
      const double* grow = p.gram.row(j);
      for (std::size_t k = 0; k < d; ++k) gw += grow[k] * w[k];
      quad += w[j] * gw;
    }
    return 0.5 * (p.yty - 2.0 * lin + quad) + alpha * l1;
  };

  bool converged = d == 0;
  std::size_t sweep = 0;
  for (; sweep < opts.max_sweeps && !converged; ++sweep) {
    double max_change = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double zj = p.gram(j, j);
      double old = model.weights[j];
      if (zj <= 0.0) {
        model.weights[j] = 0.0;
        continue;
      }
      double rho = p.xty[j] + zj * old;
      const double* grow = p.gram.row(j);
      for (std::size_t k = 0; k < d; ++k) rho -= grow[k] * model.weights[k];
      double next = soft_threshold(rho, alpha) / zj;
      model.weights[j] = next;
      max_change = std::max(max_change, std::abs(next - old));
    }
    if (!std::isfinite(max_change)) throw NumericError("NonFinite", "coordinate descent diverged");
    if (opts.track_objective) model.sweep_objectives.push_back(objective(model.weights));
    converged = max_change < opts.tol;
  }
  model.sweeps = sweep;
  model.converged = converged;

  model.intercept = p.y_mean;
  for (std::size_t j = 0; j < d; ++j) model.intercept -= model.weights[j] * p.col_means[j];
  model.selected_mask.resize(d);
  for (std::size_t j = 0; j < d; ++j) model.selected_mask[j] = model.weights[j] != 0.0;
  return model;
}

double lasso_objective(const Matrix& x, const std::vector<double>& y, const LassoModel& model) {
  double obj = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    double pred = model.intercept;
    for (std::size_t j = 0; j < x.cols; ++j) pred += model.weights[j] * x(i, j);
    double e = y[i] - pred;
    obj += 0.5 * e * e;
  }
  for (double w : model.weights) obj += model.alpha * std::abs(w);
  return obj;
}

double lasso_kkt_violation(const Matrix& x, const std::vector<double>& y,
                           const LassoModel& model) {
  std::vector<double> resid(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) {
    double pred = model.intercept;
    for (std::size_t j = 0; j < x.cols; ++j) pred += model.weights[j] * x(i, j);
    resid[i] = y[i] - pred;
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < x.cols; ++j) {
    double grad = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) grad -= x(i, j) * resid[i];
    double v = model.weights[j] != 0.0
                   ? std::abs(grad + model.alpha * (model.weights[j] > 0.0 ? 1.0 : -1.0))
                   : std::max(0.0, std::abs(grad) - model.alpha);
    worst = std::max(worst, v);
  }
  return worst;
}

double critical_alpha(const Matrix& x, const std::vector<double>& y, bool fit_intercept) {
  CenteredProblem p = center_problem(x, y, fit_intercept);
  double amax = 0.0;
  for (double c : p.xty) amax = std::max(amax, std::abs(c));
  return amax;
}

std::vector<double> default_alpha_grid(const Matrix& x, const std::vector<double>& y,
                                       std::size_t size, double decades) {
  double top = critical_alpha(x, y) / static_cast<double>(std::max<std::size_t>(x.rows, 1));
  if (top <= 0.0) return {0.0};
  std::vector<double> grid;
  grid.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    double frac = size > 1 ? static_cast<double>(i) / static_cast<double>(size - 1) : 0.0;
    grid.push_back(top * std::pow(10.0, -decades * frac));
  }
  return grid;
}

LassoCvResult lasso_cv(const Matrix& x, const std::vector<double>& y,
                       const std::vector<double>& alpha_grid, std::size_t k_folds,
                       const LassoOptions& opts) {
  if (alpha_grid.empty()) throw ConfigError("EmptyGrid", "alpha grid must be non-empty");
  if (k_folds < 2) throw ConfigError("BadFolds", "k must be >= 2");
  const std::size_t n = x.rows;
  if (n / k_folds < 2) throw DataError("FoldTooSmall", "n/k < 2");

  std::vector<double> alphas = alpha_grid;
  std::sort(alphas.begin(), alphas.end(), std::greater<>());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  std::vector<double> total_mse(alphas.size(), 0.0);
  for (std::size_t fold = 0; fold < k_folds; ++fold) {
    std::size_t lo = fold * n / k_folds;
    std::size_t hi = (fold + 1) * n / k_folds;
    Matrix xtr(n - (hi - lo), x.cols);
    std::vector<double> ytr;
    ytr.reserve(n - (hi - lo));
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= lo && i < hi) continue;
      for (std::size_t j = 0; j < x.cols; ++j) xtr(r, j) = x(i, j);
      ytr.push_back(y[i]);
      ++r;
    }
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      LassoModel m = lasso_fit(xtr, ytr, alphas[a], opts);
      double sse = 0.0;
      for (std::size_t i = lo; i < hi; ++i) {
        double pred = m.intercept;
        for (std::size_t j = 0; j < x.cols; ++j) pred += m.weights[j] * x(i, j);
        double e = y[i] - pred;
        sse += e * e;
      }
      total_mse[a] += sse / static_cast<double>(hi - lo);
    }
  }

  LassoCvResult result;
  result.alphas = alphas;
  result.mean_val_mse.resize(alphas.size());
  std::size_t best = 0;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    result.mean_val_mse[a] = total_mse[a] / static_cast<double>(k_folds);
    if (result.mean_val_mse[a] < result.mean_val_mse[best]) best = a;  // ties keep larger alpha
  }
  result.best_alpha = alphas[best];
  result.model = lasso_fit(x, y, result.best_alpha, opts);
  return result;
}

StatFeatureMatrix select_features(const LassoModel& model, const StatFeatureMatrix& x) {
  if (model.selected_mask.size() != x.column_names.size())
    throw DataError("DimensionMismatch", "mask does not match column count");
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < model.selected_mask.size(); ++j)
    if (model.selected_mask[j]) keep.push_back(j);
  if (keep.empty()) throw DataError("EmptySelection", "lasso selected no features");

  StatFeatureMatrix out;
  out.listing_ids = x.listing_ids;
  out.values = Matrix(x.values.rows, keep.size());
  for (std::size_t jj = 0; jj < keep.size(); ++jj) {
    out.column_names.push_back(x.column_names[keep[jj]]);
    for (std::size_t i = 0; i < x.values.rows; ++i) out.values(i, jj) = x.values(i, keep[jj]);
  }
  return out;
}

std::vector<PValueEntry> pvalue_rank(const StatFeatureMatrix& x, const std::vector<double>& y,
                                     std::size_t top_k) {
  const std::size_t n = x.values.rows;
  const std::size_t d = x.values.cols;
  if (n != y.size()) throw DataError("LengthMismatch", "rows != targets");

  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= static_cast<double>(std::max<std::size_t>(n, 1));
  double syy = 0.0;
  for (double v : y) syy += (v - y_mean) * (v - y_mean);

  std::vector<PValueEntry> entries;
  entries.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    PValueEntry e;
    e.name = x.column_names[j];
    double x_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) x_mean += x.values(i, j);
    x_mean /= static_cast<double>(std::max<std::size_t>(n, 1));
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double dx = x.values(i, j) - x_mean;
      sxx += dx * dx;
      sxy += dx * (y[i] - y_mean);
    }
    if (sxx <= 0.0 || n < 3) {
      entries.push_back(e);  // p = 1: no information
      continue;
    }
    double slope = sxy / sxx;
    double sse = syy - slope * sxy;
    double df = static_cast<double>(n - 2);
    if (sse <= 0.0) {
      e.p_value = 0.0;
      e.t_stat = std::numeric_limits<double>::infinity();
      entries.push_back(e);
      continue;
    }
    double se = std::sqrt(sse / df / sxx);
    e.t_stat = slope / se;
    double at = std::abs(e.t_stat);
    if (n > 30) {
      e.p_value = std::erfc(at / std::sqrt(2.0));  // normal approximation
    } else {
      boost::math::students_t dist(df);
      e.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, at));
    }
    entries.push_back(e);
  }
  std::stable_sort(entries.begin(), entries.end(), [](const PValueEntry& a, const PValueEntry& b) {
    if (a.p_value != b.p_value) return a.p_value < b.p_value;
    return a.name < b.name;
  });
  if (entries.size() > top_k) entries.resize(top_k);
  return entries;
}

std::string stat_model_to_json(const LassoModel& model, const StandardScaler& scaler,
                               const std::vector<std::string>& column_names,
                               const TargetTransform& target) {
  nlohmann::json weights = nlohmann::json::object();
  for (std::size_t j = 0; j < column_names.size(); ++j) weights[column_names[j]] = model.weights[j];
  nlohmann::json j{{"alpha", model.alpha},
                   {"weights", weights},
                   {"intercept", model.intercept},
                   {"scaler", {{"means", scaler.means}, {"stdevs", scaler.stdevs}}},
                   {"target_transform", "standardized-log10"},
                   {"target_mu", target.mu},
                   {"target_sigma", target.sigma},
                   {"converged", model.converged}};
  return j.dump(2);
}

}  // namespace msie
