#include "mcvi/stats/pca.hpp"

#include <cmath>

#include "mcvi/error.hpp"
#include "mcvi/stats/eigen_sym.hpp"

namespace mcvi::stats {

namespace {

Eigen::MatrixXd covariance_matrix(const Eigen::MatrixXd& data) {
  const Eigen::RowVectorXd means = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - means;
  return (centered.transpose() * centered) / static_cast<double>(data.rows() - 1);
}

}  // namespace

Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& data) {
  const Eigen::MatrixXd cov = covariance_matrix(data);
  const Eigen::Index d = cov.rows();
  Eigen::MatrixXd corr(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!(cov(i, i) > 0.0)) throw Error(ErrorKind::DegenerateVariance, "column " + std::to_string(i) + " is constant");
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      corr(i, j) = i == j ? 1.0 : cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
    }
  }
  return corr;
}

PcaResult pca(const Eigen::MatrixXd& data, PcaMode mode) {
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.cols();
  if (d < 2 || n <= d) throw Error(ErrorKind::InsufficientData, "PCA needs d >= 2 and more rows than columns");

  PcaResult out;
  out.input_matrix = mode == PcaMode::Correlation ? correlation_matrix(data) : covariance_matrix(data);
  const auto eig = jacobi_eigen(out.input_matrix);

  out.loadings = eig.vectors;
  out.eigenvalues = eig.values.cwiseMax(0.0);
  for (Eigen::Index j = 0; j < d; ++j) {
    Eigen::Index arg = 0;
    out.loadings.col(j).cwiseAbs().maxCoeff(&arg);
    if (out.loadings(arg, j) < 0.0) out.loadings.col(j) *= -1.0;
  }
  const double total = out.eigenvalues.sum();
  if (!(total > 0.0)) throw Error(ErrorKind::DegenerateVariance, "all eigenvalues are zero");
  out.explained_shares = out.eigenvalues / total;
  return out;
}

}  // namespace mcvi::stats
