#pragma once

#include <Eigen/Dense>

namespace mcvi::stats {

enum class PcaMode { Correlation, Covariance };

struct PcaResult {
  Eigen::MatrixXd loadings;          // d x d, column j = component j, unit length
  Eigen::VectorXd eigenvalues;       // descending, clipped at 0
  Eigen::VectorXd explained_shares;  // eigenvalue / sum
  Eigen::MatrixXd input_matrix;      // the correlation or covariance matrix decomposed
};

/// Principal components of an n x d data matrix (rows = observations).
/// Each loading column is signed so its largest-magnitude entry is positive.
/// Throws InsufficientData (n <= d or d < 2), DegenerateVariance (a
/// zero-variance column in Correlation mode) and NonConvergence.
PcaResult pca(const Eigen::MatrixXd& data, PcaMode mode = PcaMode::Correlation);

/// Sample correlation matrix of the columns of `data`.
Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& data);

}  // namespace mcvi::stats
