#include "tastecomp/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tastecomp/error.hpp"
#include "tastecomp/parallel.hpp"

namespace tastecomp {

namespace {

double objective(const Eigen::VectorXd& residual, const Eigen::VectorXd& beta, double alpha) {
  const double n = static_cast<double>(residual.size());
  return residual.squaredNorm() / (2.0 * n) + alpha * beta.lpNorm<1>();
}

Eigen::MatrixXd rows_except(const Eigen::MatrixXd& X, const std::vector<bool>& drop) {
  const auto kept = static_cast<Eigen::Index>(std::count(drop.begin(), drop.end(), false));
  Eigen::MatrixXd out(kept, X.cols());
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    if (!drop[static_cast<std::size_t>(i)]) out.row(r++) = X.row(i);
  }
  return out;
}

Eigen::VectorXd rows_except(const Eigen::VectorXd& y, const std::vector<bool>& drop) {
  const auto kept = static_cast<Eigen::Index>(std::count(drop.begin(), drop.end(), false));
  Eigen::VectorXd out(kept);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (!drop[static_cast<std::size_t>(i)]) out(r++) = y(i);
  }
  return out;
}

}  // namespace

Standardization Standardization::fit(const Eigen::MatrixXd& X) {
  Standardization s;
  const auto n = static_cast<double>(X.rows());
  s.mean.resize(static_cast<std::size_t>(X.cols()));
  s.scale.resize(static_cast<std::size_t>(X.cols()));
  for (Eigen::Index k = 0; k < X.cols(); ++k) {
    const double mu = X.col(k).mean();
    const double var = (X.col(k).array() - mu).square().sum() / n;
    const double sd = std::sqrt(var);
    s.mean[static_cast<std::size_t>(k)] = mu;
    // Columns constant up to rounding are treated as exactly constant.
    s.scale[static_cast<std::size_t>(k)] = sd > 1e-12 * std::max(1.0, std::abs(mu)) ? sd : 1.0;
  }
  return s;
}

Eigen::MatrixXd Standardization::apply(const Eigen::MatrixXd& X) const {
  Eigen::MatrixXd Z(X.rows(), X.cols());
  for (Eigen::Index k = 0; k < X.cols(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    Z.col(k) = (X.col(k).array() - mean[kk]) / scale[kk];
  }
  return Z;
}

double LassoModel::predict(std::span<const double> features) const {
  if (features.size() != coefficients.size()) {
    throw DimensionMismatch("lasso predict: expected " + std::to_string(coefficients.size()) +
                            " features, got " + std::to_string(features.size()));
  }
  double out = intercept;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    out += coefficients[k] * (features[k] - standardization.mean[k]) / standardization.scale[k];
  }
  return out;
}

Eigen::VectorXd LassoModel::predict(const Eigen::MatrixXd& X) const {
  Eigen::VectorXd out(X.rows());
  std::vector<double> row(static_cast<std::size_t>(X.cols()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index k = 0; k < X.cols(); ++k) row[static_cast<std::size_t>(k)] = X(i, k);
    out(i) = predict(row);
  }
  return out;
}

std::vector<double> LassoModel::raw_coefficients() const {
  std::vector<double> raw(coefficients.size());
  for (std::size_t k = 0; k < raw.size(); ++k) raw[k] = coefficients[k] / standardization.scale[k];
  return raw;
}

double LassoModel::raw_intercept() const {
  double b0 = intercept;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    b0 -= coefficients[k] * standardization.mean[k] / standardization.scale[k];
  }
  return b0;
}

double soft_threshold(double value, double threshold) noexcept {
  if (value > threshold) return value - threshold;
  if (value < -threshold) return value + threshold;
  return 0.0;
}

LassoModel lasso_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double alpha,
                     const LassoOptions& options, std::span<const double> warm_start) {
  if (X.rows() != y.size()) throw DimensionMismatch("lasso_fit: rows(X) != len(y)");
  if (X.rows() < 2) throw InsufficientData("lasso_fit: need at least two rows");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be >= 0", "alpha");
  if (!X.allFinite() || !y.allFinite()) throw NonFinite("lasso_fit: non-finite input");
  const auto p = static_cast<std::size_t>(X.cols());
  if (!warm_start.empty() && warm_start.size() != p) {
    throw DimensionMismatch("lasso_fit: warm start size mismatch");
  }

  LassoModel model;
  model.alpha = alpha;
  model.standardization = Standardization::fit(X);
  const Eigen::MatrixXd Z = model.standardization.apply(X);
  const double n = static_cast<double>(X.rows());
  const double y_mean = y.mean();
  model.intercept = y_mean;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(X.cols());
  if (!warm_start.empty()) {
    for (std::size_t k = 0; k < p; ++k) beta(static_cast<Eigen::Index>(k)) = warm_start[k];
  }
  Eigen::VectorXd col_norm(X.cols());
  for (Eigen::Index k = 0; k < X.cols(); ++k) {
    col_norm(k) = Z.col(k).squaredNorm() / n;
    if (col_norm(k) < 1e-12) {
      col_norm(k) = 0.0;
      beta(k) = 0.0;
    }
  }
  Eigen::VectorXd residual = (y.array() - y_mean).matrix() - Z * beta;

  if (options.record_objective) model.objective_trace.push_back(objective(residual, beta, alpha));

  for (model.sweeps = 0; model.sweeps < options.max_sweeps;) {
    double max_change = 0.0;
    for (Eigen::Index k = 0; k < X.cols(); ++k) {
      if (col_norm(k) == 0.0) continue;
      const double old = beta(k);
      const double rho = Z.col(k).dot(residual) / n + col_norm(k) * old;
      const double updated = soft_threshold(rho, alpha) / col_norm(k);
      if (updated != old) {
        residual.noalias() -= (updated - old) * Z.col(k);
        beta(k) = updated;
        max_change = std::max(max_change, std::abs(updated - old));
      }
    }
    ++model.sweeps;
    if (options.record_objective) model.objective_trace.push_back(objective(residual, beta, alpha));
    if (max_change < options.tolerance) {
      model.converged = true;
      break;
    }
  }

  model.coefficients.assign(beta.data(), beta.data() + beta.size());
  return model;
}

std::vector<double> default_alpha_grid() {
  constexpr std::size_t kCount = 30;
  std::vector<double> grid(kCount);
  for (std::size_t i = 0; i < kCount; ++i) {
    grid[i] = std::pow(10.0, -3.0 + 4.0 * static_cast<double>(i) / static_cast<double>(kCount - 1));
  }
  return grid;
}

Eigen::VectorXd holdout_predictions(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                    std::span<const std::size_t> held_out, double alpha,
                                    const LassoOptions& options) {
  std::vector<bool> drop(static_cast<std::size_t>(X.rows()), false);
  for (auto i : held_out) drop.at(i) = true;
  const auto model = lasso_fit(rows_except(X, drop), rows_except(y, drop), alpha, options);
  Eigen::VectorXd out(static_cast<Eigen::Index>(held_out.size()));
  for (std::size_t j = 0; j < held_out.size(); ++j) {
    const Eigen::VectorXd row = X.row(static_cast<Eigen::Index>(held_out[j])).transpose();
    out(static_cast<Eigen::Index>(j)) = model.predict(std::span<const double>(row.data(), row.size()));
  }
  return out;
}

AlphaSelection select_alpha(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            std::span<const double> grid, const LassoOptions& options) {
  if (X.rows() < 3) throw InsufficientData("select_alpha: need at least three rows");
  if (grid.empty()) throw ValidationError("select_alpha: empty alpha grid", "alpha_grid");
  const auto n = static_cast<std::size_t>(X.rows());

  // Walk the path from the largest alpha down so each fit warm-starts from
  // the previous, sparser solution.
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return grid[a] > grid[b]; });

  std::vector<std::vector<double>> sq_err(n, std::vector<double>(grid.size()));
  parallel_for(n, [&](std::size_t i) {
    std::vector<bool> drop(n, false);
    drop[i] = true;
    const Eigen::MatrixXd Xt = rows_except(X, drop);
    const Eigen::VectorXd yt = rows_except(y, drop);
    const Eigen::VectorXd row = X.row(static_cast<Eigen::Index>(i)).transpose();
    std::vector<double> warm;
    for (auto g : order) {
      const auto model = lasso_fit(Xt, yt, grid[g], options, warm);
      warm = model.coefficients;
      const double err = model.predict(std::span<const double>(row.data(), row.size())) -
                         y(static_cast<Eigen::Index>(i));
      sq_err[i][g] = err * err;
    }
  });

  AlphaSelection sel;
  sel.grid.assign(grid.begin(), grid.end());
  sel.cv_mse.assign(grid.size(), 0.0);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t i = 0; i < n; ++i) sel.cv_mse[g] += sq_err[i][g];
    sel.cv_mse[g] /= static_cast<double>(n);
  }
  double best = std::numeric_limits<double>::infinity();
  for (auto g : order) {
    if (sel.cv_mse[g] < best * (1.0 - 1e-12)) {
      best = sel.cv_mse[g];
      sel.alpha = grid[g];
    }
  }
  return sel;
}

}  // namespace tastecomp
