#include "mcvi/analysis/robustness.hpp"

#include <map>

#include "mcvi/stats/correlation.hpp"

namespace mcvi::analysis {

double ranking_agreement(const CountryRanking& a, const CountryRanking& b, std::size_t* shared) {
  std::map<std::string_view, int> rb;
  for (const auto& r : b.rows) rb.emplace(r.economy, r.rank);
  std::vector<double> xa, xb;
  for (const auto& r : a.rows) {
    const auto it = rb.find(r.economy);
    if (it == rb.end()) continue;
    xa.push_back(r.rank);
    xb.push_back(it->second);
  }
  if (shared) *shared = xa.size();
  // Shared subsets keep their relative order, so compare ranks of ranks.
  const auto rho = stats::spearman(xa, xb).rho;
  bool same = true;
  for (std::size_t i = 1; i < xa.size() && same; ++i) same = xb[i] > xb[i - 1];
  return same ? 1.0 : rho;
}

RobustnessReport robustness_suite(const RawDimensionPanel& raw, int min_years) {
  const auto pooled = normalize_panel(raw, NormalizationMethod::PooledRank);
  RobustnessReport out;
  out.baseline = rank_countries(aggregate_mcvi(pooled, WeightVector::equal()), min_years);

  auto add = [&](std::string name, const NormalizedPanel& norm, const WeightVector& w) {
    RobustnessRow row;
    row.specification = std::move(name);
    row.weights = w;
    row.method = norm.method;
    const auto ranking = rank_countries(aggregate_mcvi(norm, w), min_years);
    row.rho = ranking_agreement(out.baseline, ranking, &row.n);
    out.rows.push_back(std::move(row));
  };

  add("pca-weights", pooled, derive_pca_weights(pooled));
  add("drop-d1", pooled, WeightVector::make(0.0, 0.5, 0.5));
  add("drop-d2", pooled, WeightVector::make(0.5, 0.0, 0.5));
  add("drop-d3", pooled, WeightVector::make(0.5, 0.5, 0.0));
  add("within-year", normalize_panel(raw, NormalizationMethod::WithinYearRank), WeightVector::equal());
  add("minmax", normalize_panel(raw, NormalizationMethod::PooledMinMax), WeightVector::equal());
  return out;
}

RobustnessReport robustness_suite(const DataBundle& bundle, int min_years) {
  return robustness_suite(build_raw_panel(bundle), min_years);
}

}  // namespace mcvi::analysis
