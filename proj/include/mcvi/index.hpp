#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mcvi/normalize.hpp"

namespace mcvi {

/// Dimension weights; non-negative and summing to 1 within 1e-12.
struct WeightVector {
  double w1 = 1.0 / 3.0;
  double w2 = 1.0 / 3.0;
  double w3 = 1.0 / 3.0;

  static WeightVector equal() noexcept { return {}; }
  /// Throws InvalidWeights.
  static WeightVector make(double w1, double w2, double w3);
  void validate() const;
};

struct IndexRow {
  EconomyId economy;
  int year = 0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double mcvi = 0.0;
};

struct IndexPanel {
  std::vector<IndexRow> rows;  // complete observations only, (economy, year) order
  WeightVector weights;
  NormalizationMethod method = NormalizationMethod::PooledRank;
  std::size_t incomplete = 0;  // normalized rows left out for a missing dimension
};

/// mcvi = w1 d1 + w2 d2 + w3 d3 on every complete row. With equal weights
/// the sum is evaluated as (d1 + d2 + d3) / 3. Throws InvalidWeights and
/// EmptyIndex (empty input panel).
IndexPanel aggregate_mcvi(const NormalizedPanel& norm, const WeightVector& weights);

struct CountryScore {
  EconomyId economy;
  double mean_mcvi = 0.0;
  double mean_d1 = 0.0;
  double mean_d2 = 0.0;
  double mean_d3 = 0.0;
  int rank = 0;  // 1 = most vulnerable
  int years_covered = 0;
  bool below_min_years = false;
};

struct CountryRanking {
  std::vector<CountryScore> rows;  // ascending rank
  int min_years = 1;

  const CountryScore* find(std::string_view economy) const;
};

/// Unweighted time mean per country, ranked by descending mean with ties
/// broken by ascending code. Countries under `min_years` are flagged, not
/// dropped. Throws EmptyIndex and InvalidConfig (min_years < 1).
CountryRanking rank_countries(const IndexPanel& index, int min_years = 1);

/// |PC1 loadings| / sum |PC1 loadings| from a correlation-matrix PCA of
/// (d1, d2, d3) over complete rows. PC1 is first signed so its loadings sum
/// positive. Throws DegenerateVariance.
WeightVector derive_pca_weights(const NormalizedPanel& norm);

}  // namespace mcvi
