#pragma once

#include <span>
#include <vector>

namespace mcvi::stats {

/// 1-based ranks with ties sharing the average of the positions they span.
/// Values tie only when they compare equal; there is no epsilon.
std::vector<double> average_ranks(std::span<const double> values);

/// Sum over tie groups of (t^3 - t); used by tie-corrected rank tests.
double tie_correction_term(std::span<const double> values);

/// Quantile with linear interpolation between order statistics
/// (the "type 7" definition). `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double q);

double mean(std::span<const double> v);
/// Sample variance (n - 1 denominator); 0 for fewer than two values.
double sample_variance(std::span<const double> v);
double sample_sd(std::span<const double> v);

}  // namespace mcvi::stats
