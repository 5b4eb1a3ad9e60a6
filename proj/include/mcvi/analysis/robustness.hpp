#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mcvi/index.hpp"

namespace mcvi::analysis {

struct RobustnessRow {
  std::string specification;  // "pca-weights", "drop-d1", ..., "within-year", "minmax"
  WeightVector weights;
  NormalizationMethod method = NormalizationMethod::PooledRank;
  double rho = 1.0;  // Spearman of country rank positions against the baseline
  std::size_t n = 0;
};

struct RobustnessReport {
  std::vector<RobustnessRow> rows;
  CountryRanking baseline;  // equal weights, pooled ranks
};

/// Six alternative specifications against the equal-weight pooled-rank
/// baseline: PCA weights, each leave-one-dimension-out variant (the other two
/// at 1/2), within-year ranks and pooled min-max.
RobustnessReport robustness_suite(const RawDimensionPanel& raw, int min_years = 1);
RobustnessReport robustness_suite(const DataBundle& bundle, int min_years = 1);

/// Spearman between two rankings over the countries they share; exactly 1
/// when the shared rank orders agree. Throws InsufficientData below 3.
double ranking_agreement(const CountryRanking& a, const CountryRanking& b, std::size_t* shared = nullptr);

}  // namespace mcvi::analysis
