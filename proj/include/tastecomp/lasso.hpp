#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tastecomp {

// Per-column centering and scaling learned from a training set. Columns with
// zero variance keep scale 1, so they standardize to a constant zero column.
struct Standardization {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardization fit(const Eigen::MatrixXd& X);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const;
};

struct LassoOptions {
  double tolerance = 1e-6;       // max coefficient change per sweep
  std::size_t max_sweeps = 10000;
  bool record_objective = false;  // keep the objective after every sweep
};

struct LassoModel {
  double alpha = 0.0;
  double intercept = 0.0;            // in standardized feature space
  std::vector<double> coefficients;  // in standardized feature space
  Standardization standardization;
  std::size_t sweeps = 0;
  bool converged = false;
  std::vector<double> objective_trace;  // index 0 is the starting point

  double predict(std::span<const double> features) const;
  Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;

  // Coefficients and intercept on the original feature scale.
  std::vector<double> raw_coefficients() const;
  double raw_intercept() const;
};

double soft_threshold(double value, double threshold) noexcept;

// Minimizes (1/2n)||y - b0 - Z b||^2 + alpha ||b||_1 over the standardized
// design Z by cyclic coordinate descent. The intercept is not penalized.
// When max_sweeps is reached the last iterate is returned with
// converged = false. `warm_start`, when given, seeds the coefficients.
LassoModel lasso_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double alpha,
                     const LassoOptions& options = {},
                     std::span<const double> warm_start = {});

// 30 log-spaced values from 1e-3 to 1e1.
std::vector<double> default_alpha_grid();

struct AlphaSelection {
  double alpha = 0.0;
  std::vector<double> grid;
  std::vector<double> cv_mse;  // aligned with grid
};

// Leave-one-out selection of alpha; each fold standardizes on its own
// training rows. Ties go to the larger alpha.
AlphaSelection select_alpha(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            std::span<const double> grid, const LassoOptions& options = {});

// Fits on all rows except `held_out` and predicts the held-out rows.
Eigen::VectorXd holdout_predictions(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                    std::span<const std::size_t> held_out, double alpha,
                                    const LassoOptions& options = {});

}  // namespace tastecomp
