#pragma once

#include <cstddef>
#include <span>

namespace mcvi::stats {

struct MannWhitney {
  double u_a = 0.0;  // pairs (a_i, b_j) with a_i > b_j, ties counting 1/2
  double u_b = 0.0;  // n_a * n_b - u_a
  double z = 0.0;
  double p_value = 1.0;  // two-sided
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

/// Rank-sum U test. The p-value uses the normal approximation with the tie
/// correction to the variance and a 0.5 continuity correction. Throws
/// EmptySample.
MannWhitney mann_whitney(std::span<const double> a, std::span<const double> b);

struct LinearTrend {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;  // 1 when y is constant (a perfect, flat fit)
  std::size_t n = 0;
};

/// Simple OLS of y on t. Throws DegenerateTime unless t takes two distinct values.
LinearTrend linear_trend(std::span<const double> t, std::span<const double> y);

}  // namespace mcvi::stats
