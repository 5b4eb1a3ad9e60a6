#pragma once

#include <cstdint>
#include <vector>

#include "mcvi/index.hpp"
#include "mcvi/rng.hpp"

namespace mcvi {

struct McConfig {
  int n_sims = 1000;
  double dirichlet_alpha = 20.0;
  bool equal_weights = false;  // pin weights at 1/3 instead of sampling them
  double noise_halfwidth = 0.05;
  double p_switch = 0.30;  // probability a simulation uses within-year ranks
  std::uint64_t seed = 42;
  int min_years = 1;
  int n_threads = 0;  // 0 = OpenMP default, 1 = serial reference path

  /// Throws InvalidConfig.
  void validate() const;
};

/// k Gamma(alpha, 1) draws scaled to sum to 1. Throws InvalidConfig when
/// alpha <= 0 or k < 1.
std::vector<double> sample_dirichlet(double alpha, int k, SplitMix64& rng);
/// The k = 3 case as a weight vector.
WeightVector sample_dirichlet_weights(double alpha, SplitMix64& rng);

/// Every present raw value x becomes x * (1 + u), u ~ U(-h, h), one draw
/// per value in row order (lsci, mean_lsbci, partner_count, port_hhi).
/// Missing values stay missing and consume no draw.
RawDimensionPanel perturb_indicators(const RawDimensionPanel& raw, double halfwidth, SplitMix64& rng);

struct SimulationDraw {
  WeightVector weights;
  bool within_year = false;
  double rho = 1.0;  // Spearman of country rank positions against the baseline
};

struct RankInterval {
  EconomyId economy;
  int baseline_rank = 0;
  double q025 = 0.0;
  double q50 = 0.0;
  double q975 = 0.0;
  double ci_width = 0.0;  // q975 - q025
};

struct McResult {
  McConfig config;
  std::vector<SimulationDraw> sims;
  std::vector<RankInterval> countries;  // baseline rank order
  double mean_rho = 1.0;
  double min_rho = 1.0;
  double share_above_095 = 1.0;
  double share_above_099 = 1.0;
  double mean_ci_width = 0.0;
};

/// Baseline is equal weights on pooled ranks. Each simulation i draws from
/// make_stream(seed, i): weights first, then the noise, then one uniform
/// deciding the normalization. Results do not depend on the thread count.
McResult run_monte_carlo(const RawDimensionPanel& raw, const McConfig& config);
McResult run_monte_carlo(const DataBundle& bundle, const McConfig& config);

struct VarianceShares {
  double weight_share = 0.0;
  double noise_share = 0.0;
  double normalization_share = 0.0;
  // Mean over countries of the rank variance inside each one-source ensemble.
  double weight_variance = 0.0;
  double noise_variance = 0.0;
  double normalization_variance = 0.0;
};

/// Three ensembles of n_sims each, one uncertainty source active per
/// ensemble. Ensemble e uses streams of stream_seed(seed, e + 1). Throws
/// AllVariancesZero.
VarianceShares decompose_variance(const RawDimensionPanel& raw, const McConfig& config);
VarianceShares decompose_variance(const DataBundle& bundle, const McConfig& config);

namespace kernels {

/// Rank positions per simulation, row-major n_sims x n_countries, in the
/// baseline country order. Countries absent from a simulation get rank 0.
struct SimulationBlock {
  std::vector<SimulationDraw> draws;
  std::vector<int> ranks;
};

SimulationBlock simulate_serial(const RawDimensionPanel& raw, const CountryRanking& baseline, const McConfig& config);
SimulationBlock simulate_parallel(const RawDimensionPanel& raw, const CountryRanking& baseline,
                                  const McConfig& config);

}  // namespace kernels

}  // namespace mcvi
