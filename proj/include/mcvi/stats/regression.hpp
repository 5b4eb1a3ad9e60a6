#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace mcvi::stats {

/// Regressor matrix with column names. Pooled OLS expects the caller to
/// include an intercept column (conventionally named "const"); the panel
/// estimators take slopes only and add their own.
struct Design {
  std::vector<std::string> names;
  Eigen::MatrixXd x;  // n x k
};

enum class ModelKind { Pooled, FixedEffects, RandomEffects };

std::string_view to_string(ModelKind m) noexcept;

struct RegressionResult {
  ModelKind model = ModelKind::Pooled;
  std::vector<std::string> names;
  Eigen::VectorXd coef;
  Eigen::VectorXd se;       // from `cov`
  Eigen::VectorXd t;        // coef / se, 0 where se == 0
  Eigen::VectorXd p_value;  // two-sided Student t
  Eigen::MatrixXd cov;      // reported covariance: CR1 for Pooled/FE, conventional for RE
  Eigen::MatrixXd cov_conventional;
  double r_squared = 0.0;  // FE: within R^2; RE: squared corr(y, X b)
  std::size_t n_obs = 0;
  std::size_t n_clusters = 0;
  long dof = 0;  // residual degrees of freedom

  // Random effects only.
  double sigma2_e = 0.0;
  double sigma2_u = 0.0;
  bool sigma2_u_floored = false;

  double coefficient(std::string_view name) const;
};

/// Least squares with CR1 cluster-robust covariance
///   c (X'X)^-1 (sum_g X_g' u_g u_g' X_g) (X'X)^-1,  c = G/(G-1) * (n-1)/(n-k).
/// p-values use G - 1 degrees of freedom. Throws RankDeficient, TooFewClusters.
RegressionResult ols_clustered(std::span<const double> y, const Design& x, std::span<const std::string> clusters);

/// Within estimator. Residual dof is n - G - k; covariance is CR1 by entity
/// with the small-sample factor counted on slopes only. Throws
/// NoWithinVariation naming the first regressor the demeaning wipes out.
RegressionResult fixed_effects(std::span<const double> y, const Design& x, std::span<const std::string> entities);

/// Swamy-Arora random effects on an (un)balanced panel:
///   sigma2_e = SSR_within / (n - G - k)
///   sigma2_u = max(0, SSR_between / (G - k - 1) - sigma2_e / T_h), T_h harmonic mean of T_i
///   theta_i  = 1 - sqrt(sigma2_e / (T_i sigma2_u + sigma2_e))
/// then OLS on quasi-demeaned data. The covariance is the GLS one,
/// sigma2_e (X*'X*)^-1, so V_FE - V_RE is positive semidefinite.
RegressionResult random_effects(std::span<const double> y, const Design& x, std::span<const std::string> entities);

struct HausmanResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;
  std::vector<std::string> regressors;
  bool pseudo_inverse = false;  // the difference matrix was not positive definite
};

/// H = d' (V_FE - V_RE)^+ d over shared slopes, using the conventional
/// covariances of both fits. The difference matrix is projected onto its
/// positive eigenvalues, so H >= 0 always; dof counts those eigenvalues.
/// Throws NoCommonRegressors.
HausmanResult hausman(const RegressionResult& fe, const RegressionResult& re);

}  // namespace mcvi::stats
