#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mcvi/index.hpp"
#include "mcvi/stats/correlation.hpp"
#include "mcvi/stats/nonparametric.hpp"

namespace mcvi::analysis {

struct AnnualMean {
  int year = 0;
  std::size_t n = 0;
  double mean = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  std::optional<double> sids_mean;
  std::optional<double> non_sids_mean;
  std::optional<double> gap;  // SIDS minus non-SIDS
};

struct YearPairCorrelation {
  int year_a = 0;
  int year_b = 0;
  std::optional<stats::Correlation> corr;  // missing below 3 shared countries or for a constant year
  std::size_t shared = 0;
};

struct Volatility {
  EconomyId economy;
  double sd = 0.0;  // sample SD of the country's MCVI over its years
  int years = 0;
  bool ranked = false;  // at least kVolatilityMinYears of coverage
};

inline constexpr int kVolatilityMinYears = 5;

struct TrendReport {
  std::vector<AnnualMean> annual;
  stats::LinearTrend trend;  // annual mean on calendar year
  double pct_change = 0.0;   // 100 * (last - first) / first annual mean
  std::optional<double> first_gap;
  std::optional<double> last_gap;
  std::vector<YearPairCorrelation> consecutive;
  int split_first_end = 0;  // first half covers years <= split_first_end
  YearPairCorrelation split_half;   // country means, first half vs second half
  YearPairCorrelation first_last;   // single-year scores, first vs last year
  std::vector<Volatility> volatility;  // ranked first, then by descending sd, then code
};

/// Annual means with trend, SIDS segment gap, consecutive-year and split-half
/// rank stability, and per-country volatility. Throws InsufficientYears when
/// the panel spans fewer than two years, UnknownEconomy for an unclassified code.
TrendReport temporal_report(const IndexPanel& index, const ClassificationTable& cls);

}  // namespace mcvi::analysis
