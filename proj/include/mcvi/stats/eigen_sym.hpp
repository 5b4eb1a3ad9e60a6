#pragma once

#include <Eigen/Dense>

namespace mcvi::stats {

struct SymmetricEigen {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // column j pairs with values(j)
  int sweeps = 0;
};

/// Cyclic Jacobi rotations for a small symmetric matrix. Stops once the
/// off-diagonal Frobenius norm drops to `tolerance` times the matrix norm;
/// throws NonConvergence after `max_sweeps`.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, double tolerance = 1e-12, int max_sweeps = 100);

}  // namespace mcvi::stats
