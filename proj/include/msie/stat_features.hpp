#pragma once

#include <string>
#include <vector>

#include "msie/corpus_io.hpp"
#include "msie/matrix.hpp"
#include "msie/target.hpp"

namespace msie {

struct StatFeatureMatrix {
  std::vector<std::string> listing_ids;
  std::vector<std::string> column_names;
  Matrix values;  // rows aligned with listing_ids
};

// Table-level preprocessing fit on the training split: stat columns with more
// than `missing_threshold` missing cells are dropped; remaining gaps take the
// training-split column median.
struct StatPreprocess {
  std::vector<std::string> kept_columns;
  std::vector<std::size_t> kept_indices;  // into the table's stat_columns
  std::vector<double> medians;
  std::vector<std::string> dropped_columns;
};

StatPreprocess fit_stat_preprocess(const ListingTable& train, double missing_threshold = 0.3);
StatFeatureMatrix apply_stat_preprocess(const StatPreprocess& prep, const ListingTable& table);

struct StandardScaler {
  std::vector<double> means;
  std::vector<double> stdevs;  // population formula; 0 marks a constant column
  std::vector<std::size_t> constant_columns;

  Matrix transform(const Matrix& x) const;
};

// Throws AllConstant when every column has zero variance.
StandardScaler fit_standardizer(const Matrix& x);

struct LassoOptions {
  double tol = 1e-6;         // max coefficient change per sweep
  std::size_t max_sweeps = 10000;
  bool fit_intercept = true;
  bool track_objective = false;
};

struct LassoModel {
  double alpha = 0.0;
  std::vector<double> weights;
  double intercept = 0.0;
  std::vector<bool> selected_mask;  // weight != 0
  bool converged = true;
  std::size_t sweeps = 0;
  std::vector<double> sweep_objectives;  // filled when track_objective
};

// Cyclic coordinate descent with covariance updates for
//   obj = 1/2 sum_i (y_i - w.x_i - b)^2 + alpha * sum_j |w_j|
LassoModel lasso_fit(const Matrix& x, const std::vector<double>& y, double alpha,
                     const LassoOptions& opts = {});

double lasso_objective(const Matrix& x, const std::vector<double>& y, const LassoModel& model);
// Max KKT violation: 0 means exact stationarity at the model's weights.
double lasso_kkt_violation(const Matrix& x, const std::vector<double>& y,
                           const LassoModel& model);

// Smallest alpha that forces the all-zero model (max_j |x_j . y_centered|).
double critical_alpha(const Matrix& x, const std::vector<double>& y, bool fit_intercept = true);

// 50 log-spaced values from max|x.y|/n down four decades.
std::vector<double> default_alpha_grid(const Matrix& x, const std::vector<double>& y,
                                       std::size_t size = 50, double decades = 4.0);

struct LassoCvResult {
  double best_alpha = 0.0;
  LassoModel model;  // refit on all rows at best_alpha
  std::vector<double> alphas;
  std::vector<double> mean_val_mse;
};

// k contiguous temporal folds over rows assumed already in time order.
// Ties on validation MSE resolve toward the larger (sparser) alpha.
LassoCvResult lasso_cv(const Matrix& x, const std::vector<double>& y,
                       const std::vector<double>& alpha_grid, std::size_t k_folds,
                       const LassoOptions& opts = {});

// Keeps the masked columns in their original order; throws EmptySelection on
// an all-false mask.
StatFeatureMatrix select_features(const LassoModel& model, const StatFeatureMatrix& x);

struct PValueEntry {
  std::string name;
  double p_value = 1.0;
  double t_stat = 0.0;
};

// Per-feature univariate regression slope t-test, two-sided, ascending p.
std::vector<PValueEntry> pvalue_rank(const StatFeatureMatrix& x, const std::vector<double>& y,
                                     std::size_t top_k);

// JSON model artifact: alpha, named weights, intercept, scaler, transform tag.
std::string stat_model_to_json(const LassoModel& model, const StandardScaler& scaler,
                               const std::vector<std::string>& column_names,
                               const TargetTransform& target);

}  // namespace msie
