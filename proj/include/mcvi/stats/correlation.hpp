#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace mcvi::stats {

struct Correlation {
  double rho = 0.0;
  double p_value = 1.0;  // two-sided, Student t with n - 2 dof
  std::size_t n = 0;
};

/// Pearson product-moment correlation. Throws InsufficientData (n < 3) and
/// ZeroVariance.
Correlation pearson(std::span<const double> x, std::span<const double> y);
/// Pairs with a missing side are dropped before computing.
Correlation pearson(std::span<const std::optional<double>> x, std::span<const std::optional<double>> y);

/// Pearson correlation of average-rank transforms.
Correlation spearman(std::span<const double> x, std::span<const double> y);
Correlation spearman(std::span<const std::optional<double>> x, std::span<const std::optional<double>> y);

/// Two-sided p-value of a correlation coefficient r from n observations.
double correlation_p_value(double r, std::size_t n);

}  // namespace mcvi::stats
