#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mcvi/ingest.hpp"

namespace mcvi {

/// Raw, pre-normalisation indicators for one (economy, year).
///
/// `partner_count` is a count but is held as a real: the Monte Carlo noise
/// step perturbs it multiplicatively before ranking. It is 0 when the
/// economy has no bilateral records that year; in that case `mean_lsbci` is
/// missing and the D2 sub-indicators are treated as missing downstream.
struct RawDimensionRow {
  EconomyId economy;
  int year = 0;
  std::optional<double> lsci;
  std::optional<double> mean_lsbci;
  double partner_count = 0.0;
  std::optional<double> port_hhi;

  bool has_bilateral() const noexcept { return mean_lsbci.has_value(); }
};

struct RawDimensionPanel {
  std::vector<RawDimensionRow> rows;  // sorted by (economy, year)
};

/// Arithmetic mean of a country's bilateral scores. Throws EmptyPartnerSet.
double mean_bilateral(std::span<const double> pair_values);

/// Distinct partners of `economy` in `year` among deduplicated pair rows.
std::size_t partner_count(std::span<const LsbciRow> pairs, std::string_view economy, int year);

/// Herfindahl index of port shares, sum_k (p_k / sum_j p_j)^2, over ports
/// with a strictly positive score. Result lies in [1/K, 1]. Throws
/// NoActivePorts when no score is positive.
double port_hhi(std::span<const double> port_scores);

/// One row per (economy, year) covered by at least one indicator source.
/// Coverage gaps become missing fields; zero-score port sets give a missing HHI.
RawDimensionPanel build_raw_panel(const DataBundle& bundle);

}  // namespace mcvi
