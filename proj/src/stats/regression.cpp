#include "mcvi/stats/regression.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <map>

#include "mcvi/error.hpp"
#include "mcvi/stats/eigen_sym.hpp"

namespace mcvi::stats {

std::string_view to_string(ModelKind m) noexcept {
  switch (m) {
    case ModelKind::Pooled: return "pooled";
    case ModelKind::FixedEffects: return "fe";
    case ModelKind::RandomEffects: return "re";
  }
  return "?";
}

double RegressionResult::coefficient(std::string_view name) const {
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j] == name) return coef(static_cast<Eigen::Index>(j));
  }
  throw Error(ErrorKind::InvalidConfig, "no regressor named " + std::string(name), std::string(name));
}

namespace {

struct LsFit {
  Eigen::VectorXd coef;
  Eigen::VectorXd resid;
  Eigen::MatrixXd xtx_inv;
  double ssr = 0.0;
};

LsFit least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  if (n <= k) throw Error(ErrorKind::RankDeficient, "need more observations than regressors");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  if (qr.rank() < k) throw Error(ErrorKind::RankDeficient, "regressor matrix has rank " + std::to_string(qr.rank()));
  LsFit fit;
  fit.coef = qr.solve(y);
  fit.resid = y - x * fit.coef;
  fit.ssr = fit.resid.squaredNorm();
  // (X'X)^-1 = P R^-1 R^-T P' from the pivoted QR.
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd inner = r_inv * r_inv.transpose();
  fit.xtx_inv = qr.colsPermutation() * inner * qr.colsPermutation().transpose();
  return fit;
}

struct Groups {
  std::vector<int> id;  // dense group index per observation
  int count = 0;
  std::vector<int> sizes;
};

Groups index_groups(std::span<const std::string> labels) {
  std::map<std::string_view, int> dense;
  for (const auto& l : labels) dense.emplace(l, 0);
  int next = 0;
  for (auto& [_, v] : dense) v = next++;
  Groups g;
  g.count = next;
  g.sizes.assign(static_cast<std::size_t>(next), 0);
  g.id.reserve(labels.size());
  for (const auto& l : labels) {
    const int id = dense.at(l);
    g.id.push_back(id);
    ++g.sizes[static_cast<std::size_t>(id)];
  }
  return g;
}

Eigen::MatrixXd cluster_meat(const Eigen::MatrixXd& x, const Eigen::VectorXd& u, const Groups& g) {
  Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(g.count, x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) scores.row(g.id[static_cast<std::size_t>(i)]) += u(i) * x.row(i);
  return scores.transpose() * scores;
}

double centered_ss(const Eigen::VectorXd& y) { return (y.array() - y.mean()).square().sum(); }

void finish(RegressionResult& r, double t_dof) {
  const Eigen::Index k = r.coef.size();
  r.se = r.cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  r.t = Eigen::VectorXd::Zero(k);
  r.p_value = Eigen::VectorXd::Ones(k);
  boost::math::students_t_distribution<double> dist(std::max(1.0, t_dof));
  for (Eigen::Index j = 0; j < k; ++j) {
    if (r.se(j) > 0.0) {
      r.t(j) = r.coef(j) / r.se(j);
      r.p_value(j) = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t(j)))));
    }
  }
}

void check_shapes(std::span<const double> y, const Design& x, std::size_t labels) {
  if (static_cast<Eigen::Index>(y.size()) != x.x.rows() || labels != y.size() ||
      static_cast<Eigen::Index>(x.names.size()) != x.x.cols()) {
    throw Error(ErrorKind::InvalidConfig, "regression inputs disagree in size");
  }
}

Eigen::VectorXd as_vector(std::span<const double> y) {
  return Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
}

struct GroupMeans {
  Eigen::VectorXd y;
  Eigen::MatrixXd x;
};

GroupMeans group_means(const Eigen::VectorXd& y, const Eigen::MatrixXd& x, const Groups& g) {
  GroupMeans m{Eigen::VectorXd::Zero(g.count), Eigen::MatrixXd::Zero(g.count, x.cols())};
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const int id = g.id[static_cast<std::size_t>(i)];
    m.y(id) += y(i);
    m.x.row(id) += x.row(i);
  }
  for (int c = 0; c < g.count; ++c) {
    const double s = g.sizes[static_cast<std::size_t>(c)];
    m.y(c) /= s;
    m.x.row(c) /= s;
  }
  return m;
}

struct Within {
  Eigen::VectorXd y;
  Eigen::MatrixXd x;
  Groups groups;
  GroupMeans means;
};

Within demean(std::span<const double> y_in, const Design& x, std::span<const std::string> entities) {
  check_shapes(y_in, x, entities.size());
  Within w;
  w.groups = index_groups(entities);
  if (w.groups.count < 2) throw Error(ErrorKind::TooFewClusters, "panel estimators need at least two entities");
  const Eigen::VectorXd y = as_vector(y_in);
  w.means = group_means(y, x.x, w.groups);
  w.y = y;
  w.x = x.x;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const int id = w.groups.id[static_cast<std::size_t>(i)];
    w.y(i) -= w.means.y(id);
    w.x.row(i) -= w.means.x.row(id);
  }
  for (Eigen::Index j = 0; j < x.x.cols(); ++j) {
    const double scale = 1.0 + x.x.col(j).cwiseAbs().maxCoeff();
    if (w.x.col(j).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
      throw Error(ErrorKind::NoWithinVariation, "regressor is constant within every entity",
                  x.names[static_cast<std::size_t>(j)]);
    }
  }
  return w;
}

}  // namespace

RegressionResult ols_clustered(std::span<const double> y_in, const Design& x, std::span<const std::string> clusters) {
  check_shapes(y_in, x, clusters.size());
  const Groups g = index_groups(clusters);
  if (g.count < 2) throw Error(ErrorKind::TooFewClusters, "clustered errors need at least two clusters");
  const Eigen::VectorXd y = as_vector(y_in);
  const LsFit fit = least_squares(x.x, y);
  const auto n = static_cast<double>(x.x.rows());
  const auto k = static_cast<double>(x.x.cols());
  const double gc = g.count;

  RegressionResult r;
  r.model = ModelKind::Pooled;
  r.names = x.names;
  r.coef = fit.coef;
  r.n_obs = static_cast<std::size_t>(x.x.rows());
  r.n_clusters = static_cast<std::size_t>(g.count);
  r.dof = static_cast<long>(n - k);
  const double c = gc / (gc - 1.0) * (n - 1.0) / (n - k);
  r.cov = c * fit.xtx_inv * cluster_meat(x.x, fit.resid, g) * fit.xtx_inv;
  r.cov_conventional = fit.ssr / (n - k) * fit.xtx_inv;
  const double sst = centered_ss(y);
  r.r_squared = sst > 0.0 ? 1.0 - fit.ssr / sst : 1.0;
  finish(r, gc - 1.0);
  return r;
}

RegressionResult fixed_effects(std::span<const double> y_in, const Design& x, std::span<const std::string> entities) {
  const Within w = demean(y_in, x, entities);
  const auto n = static_cast<double>(w.y.size());
  const auto k = static_cast<double>(w.x.cols());
  const double gc = w.groups.count;
  const double dof = n - gc - k;
  if (dof < 1.0) throw Error(ErrorKind::InsufficientData, "no residual degrees of freedom after absorbing entities");
  const LsFit fit = least_squares(w.x, w.y);

  RegressionResult r;
  r.model = ModelKind::FixedEffects;
  r.names = x.names;
  r.coef = fit.coef;
  r.n_obs = static_cast<std::size_t>(w.y.size());
  r.n_clusters = static_cast<std::size_t>(w.groups.count);
  r.dof = static_cast<long>(dof);
  const double c = gc / (gc - 1.0) * (n - 1.0) / (n - k);
  r.cov = c * fit.xtx_inv * cluster_meat(w.x, fit.resid, w.groups) * fit.xtx_inv;
  r.cov_conventional = fit.ssr / dof * fit.xtx_inv;
  const double sst = w.y.squaredNorm();
  r.r_squared = sst > 0.0 ? 1.0 - fit.ssr / sst : 1.0;
  r.sigma2_e = fit.ssr / dof;
  finish(r, gc - 1.0);
  return r;
}

RegressionResult random_effects(std::span<const double> y_in, const Design& x, std::span<const std::string> entities) {
  const Within w = demean(y_in, x, entities);
  const Eigen::Index n = w.y.size();
  const Eigen::Index k = w.x.cols();
  const int gcount = w.groups.count;
  const double within_dof = static_cast<double>(n - gcount - k);
  if (within_dof < 1.0) throw Error(ErrorKind::InsufficientData, "no residual degrees of freedom after absorbing entities");
  if (gcount <= k + 1) throw Error(ErrorKind::InsufficientData, "between regression needs more entities than regressors");

  const LsFit within = least_squares(w.x, w.y);
  const double s2e = within.ssr / within_dof;

  Eigen::MatrixXd xb(gcount, k + 1);
  xb.col(0).setOnes();
  xb.rightCols(k) = w.means.x;
  const LsFit between = least_squares(xb, w.means.y);
  const double s2b = between.ssr / static_cast<double>(gcount - k - 1);
  double inv_t = 0.0;
  for (int s : w.groups.sizes) inv_t += 1.0 / s;
  const double t_harmonic = gcount / inv_t;
  const double raw_u = s2b - s2e / t_harmonic;

  RegressionResult r;
  r.model = ModelKind::RandomEffects;
  r.sigma2_e = s2e;
  r.sigma2_u = std::max(0.0, raw_u);
  r.sigma2_u_floored = raw_u < 0.0;

  const Eigen::VectorXd y = as_vector(y_in);
  Eigen::VectorXd ys(n);
  Eigen::MatrixXd xs(n, k + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int id = w.groups.id[static_cast<std::size_t>(i)];
    const double ti = w.groups.sizes[static_cast<std::size_t>(id)];
    const double denom = ti * r.sigma2_u + s2e;
    const double theta = denom > 0.0 ? 1.0 - std::sqrt(s2e / denom) : 0.0;
    ys(i) = y(i) - theta * w.means.y(id);
    xs(i, 0) = 1.0 - theta;
    xs.row(i).tail(k) = x.x.row(i) - theta * w.means.x.row(id);
  }
  const LsFit fit = least_squares(xs, ys);
  const double dof = static_cast<double>(n - k - 1);

  r.names.reserve(static_cast<std::size_t>(k + 1));
  r.names.push_back("const");
  r.names.insert(r.names.end(), x.names.begin(), x.names.end());
  r.coef = fit.coef;
  r.n_obs = static_cast<std::size_t>(n);
  r.n_clusters = static_cast<std::size_t>(gcount);
  r.dof = static_cast<long>(dof);
  r.cov_conventional = s2e * fit.xtx_inv;
  r.cov = r.cov_conventional;

  Eigen::MatrixXd x1(n, k + 1);
  x1.col(0).setOnes();
  x1.rightCols(k) = x.x;
  const Eigen::VectorXd fitted = x1 * fit.coef;
  const double syy = centered_ss(y);
  const double sff = centered_ss(fitted);
  if (syy > 0.0 && sff > 0.0) {
    const double sxy = ((y.array() - y.mean()) * (fitted.array() - fitted.mean())).sum();
    r.r_squared = sxy * sxy / (syy * sff);
  } else {
    r.r_squared = syy > 0.0 ? 0.0 : 1.0;
  }
  finish(r, dof);
  return r;
}

HausmanResult hausman(const RegressionResult& fe, const RegressionResult& re) {
  HausmanResult h;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> idx;
  for (std::size_t i = 0; i < fe.names.size(); ++i) {
    if (fe.names[i] == "const") continue;
    for (std::size_t j = 0; j < re.names.size(); ++j) {
      if (re.names[j] == fe.names[i]) {
        idx.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        h.regressors.push_back(fe.names[i]);
      }
    }
  }
  if (idx.empty()) throw Error(ErrorKind::NoCommonRegressors, "fixed and random effects share no slope");

  const auto m = static_cast<Eigen::Index>(idx.size());
  Eigen::VectorXd d(m);
  Eigen::MatrixXd v(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    d(a) = fe.coef(idx[a].first) - re.coef(idx[a].second);
    for (Eigen::Index b = 0; b < m; ++b) {
      v(a, b) = fe.cov_conventional(idx[a].first, idx[b].first) - re.cov_conventional(idx[a].second, idx[b].second);
    }
  }
  v = 0.5 * (v + v.transpose());
  const auto eig = jacobi_eigen(v);
  const double scale = std::max(eig.values.cwiseAbs().maxCoeff(), 0.0);
  const double cut = scale * static_cast<double>(m) * 1e-12;
  double stat = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (eig.values(j) > cut && eig.values(j) > 0.0) {
      const double proj = eig.vectors.col(j).dot(d);
      stat += proj * proj / eig.values(j);
      ++h.dof;
    } else {
      h.pseudo_inverse = true;
    }
  }
  h.statistic = stat;
  if (h.dof > 0) {
    boost::math::chi_squared_distribution<double> chi(h.dof);
    h.p_value = std::clamp(boost::math::cdf(boost::math::complement(chi, stat)), 0.0, 1.0);
  }
  return h;
}

}  // namespace mcvi::stats
