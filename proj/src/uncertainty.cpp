#include "mcvi/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>

#include "mcvi/error.hpp"
#include "mcvi/parallel.hpp"
#include "mcvi/stats/correlation.hpp"
#include "mcvi/stats/ranks.hpp"

namespace mcvi {

void McConfig::validate() const {
  if (n_sims < 1) throw Error(ErrorKind::InvalidConfig, "n_sims must be positive");
  if (!(dirichlet_alpha > 0.0) || !std::isfinite(dirichlet_alpha)) {
    throw Error(ErrorKind::InvalidConfig, "dirichlet_alpha must be positive and finite");
  }
  if (!(noise_halfwidth >= 0.0 && noise_halfwidth < 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "noise_halfwidth must lie in [0, 1)");
  }
  if (!(p_switch >= 0.0 && p_switch <= 1.0)) throw Error(ErrorKind::InvalidConfig, "p_switch must lie in [0, 1]");
  if (min_years < 1) throw Error(ErrorKind::InvalidConfig, "min_years must be at least 1");
  if (n_threads < 0) throw Error(ErrorKind::InvalidConfig, "n_threads must be non-negative");
}

std::vector<double> sample_dirichlet(double alpha, int k, SplitMix64& rng) {
  if (k < 1) throw Error(ErrorKind::InvalidConfig, "Dirichlet dimension must be positive");
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidConfig, "Dirichlet alpha must be positive");
  std::vector<double> g(static_cast<std::size_t>(k));
  double total = 0.0;
  for (auto& v : g) {
    v = sample_gamma(alpha, rng);
    total += v;
  }
  for (auto& v : g) v /= total;
  return g;
}

WeightVector sample_dirichlet_weights(double alpha, SplitMix64& rng) {
  const auto g = sample_dirichlet(alpha, 3, rng);
  return WeightVector::make(g[0], g[1], 1.0 - g[0] - g[1]);
}

RawDimensionPanel perturb_indicators(const RawDimensionPanel& raw, double halfwidth, SplitMix64& rng) {
  if (!(halfwidth >= 0.0 && halfwidth < 1.0)) throw Error(ErrorKind::InvalidConfig, "halfwidth must lie in [0, 1)");
  RawDimensionPanel out = raw;
  if (halfwidth == 0.0) return out;
  auto jitter = [&](double x) { return x * (1.0 + rng.uniform(-halfwidth, halfwidth)); };
  for (auto& r : out.rows) {
    if (r.lsci) r.lsci = jitter(*r.lsci);
    if (r.mean_lsbci) {
      r.mean_lsbci = jitter(*r.mean_lsbci);
      r.partner_count = jitter(r.partner_count);
    }
    if (r.port_hhi) r.port_hhi = jitter(*r.port_hhi);
  }
  return out;
}

namespace {

CountryRanking baseline_ranking(const RawDimensionPanel& raw, int min_years) {
  const auto norm = normalize_panel(raw, NormalizationMethod::PooledRank);
  return rank_countries(aggregate_mcvi(norm, WeightVector::equal()), min_years);
}

struct Context {
  const RawDimensionPanel& raw;
  const McConfig& config;
  std::map<std::string_view, std::size_t> position;  // economy -> column in the rank block
  std::vector<double> baseline_ranks;
};

Context make_context(const RawDimensionPanel& raw, const CountryRanking& baseline, const McConfig& config) {
  Context ctx{raw, config, {}, {}};
  for (std::size_t j = 0; j < baseline.rows.size(); ++j) {
    ctx.position.emplace(baseline.rows[j].economy, j);
    ctx.baseline_ranks.push_back(baseline.rows[j].rank);
  }
  return ctx;
}

void simulate_one(const Context& ctx, int sim, SimulationDraw& draw, int* ranks) {
  const auto& cfg = ctx.config;
  auto rng = make_stream(cfg.seed, static_cast<std::uint64_t>(sim));
  draw.weights = cfg.equal_weights ? WeightVector::equal() : sample_dirichlet_weights(cfg.dirichlet_alpha, rng);
  const RawDimensionPanel perturbed = perturb_indicators(ctx.raw, cfg.noise_halfwidth, rng);
  draw.within_year = rng.uniform() < cfg.p_switch;
  const auto method = draw.within_year ? NormalizationMethod::WithinYearRank : NormalizationMethod::PooledRank;
  const auto ranking = rank_countries(aggregate_mcvi(normalize_panel(perturbed, method), draw.weights), cfg.min_years);

  const std::size_t nc = ctx.baseline_ranks.size();
  std::fill(ranks, ranks + nc, 0);
  for (const auto& row : ranking.rows) {
    const auto it = ctx.position.find(row.economy);
    if (it != ctx.position.end()) ranks[it->second] = row.rank;
  }
  std::vector<double> base, sim_ranks;
  for (std::size_t j = 0; j < nc; ++j) {
    if (ranks[j] == 0) continue;
    base.push_back(ctx.baseline_ranks[j]);
    sim_ranks.push_back(ranks[j]);
  }
  draw.rho = base == sim_ranks ? 1.0 : stats::spearman(base, sim_ranks).rho;
}

kernels::SimulationBlock allocate(const Context& ctx) {
  kernels::SimulationBlock block;
  block.draws.resize(static_cast<std::size_t>(ctx.config.n_sims));
  block.ranks.assign(static_cast<std::size_t>(ctx.config.n_sims) * ctx.baseline_ranks.size(), 0);
  return block;
}

kernels::SimulationBlock simulate(const RawDimensionPanel& raw, const CountryRanking& baseline, const McConfig& config) {
  return config.n_threads == 1 ? kernels::simulate_serial(raw, baseline, config)
                               : kernels::simulate_parallel(raw, baseline, config);
}

double rank_variance_mean(const kernels::SimulationBlock& block, std::size_t nc) {
  if (nc == 0) return 0.0;
  const std::size_t n = block.draws.size();
  double total = 0.0;
  std::vector<double> col;
  for (std::size_t j = 0; j < nc; ++j) {
    col.clear();
    for (std::size_t s = 0; s < n; ++s) {
      const int r = block.ranks[s * nc + j];
      if (r > 0) col.push_back(r);
    }
    total += stats::sample_variance(col);
  }
  return total / static_cast<double>(nc);
}

}  // namespace

namespace kernels {

SimulationBlock simulate_serial(const RawDimensionPanel& raw, const CountryRanking& baseline, const McConfig& config) {
  config.validate();
  const Context ctx = make_context(raw, baseline, config);
  auto block = allocate(ctx);
  const std::size_t nc = ctx.baseline_ranks.size();
  for (int s = 0; s < config.n_sims; ++s) {
    simulate_one(ctx, s, block.draws[static_cast<std::size_t>(s)], block.ranks.data() + static_cast<std::size_t>(s) * nc);
  }
  return block;
}

SimulationBlock simulate_parallel(const RawDimensionPanel& raw, const CountryRanking& baseline,
                                  const McConfig& config) {
  config.validate();
  const Context ctx = make_context(raw, baseline, config);
  auto block = allocate(ctx);
  const std::size_t nc = ctx.baseline_ranks.size();
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(config.n_sims));
#pragma omp parallel for num_threads(resolve_threads(config.n_threads)) schedule(dynamic)
  for (int s = 0; s < config.n_sims; ++s) {
    const auto i = static_cast<std::size_t>(s);
    try {
      simulate_one(ctx, s, block.draws[i], block.ranks.data() + i * nc);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  // The lowest failing simulation is reported, as the serial path would.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return block;
}

}  // namespace kernels

McResult run_monte_carlo(const RawDimensionPanel& raw, const McConfig& config) {
  config.validate();
  const auto baseline = baseline_ranking(raw, config.min_years);
  const auto block = simulate(raw, baseline, config);
  const std::size_t nc = baseline.rows.size();
  const std::size_t n = block.draws.size();

  McResult out;
  out.config = config;
  out.sims = block.draws;
  double rho_sum = 0.0;
  std::size_t above95 = 0, above99 = 0;
  out.min_rho = 1.0;
  for (const auto& d : block.draws) {
    rho_sum += d.rho;
    out.min_rho = std::min(out.min_rho, d.rho);
    above95 += d.rho > 0.95 ? 1 : 0;
    above99 += d.rho > 0.99 ? 1 : 0;
  }
  out.mean_rho = rho_sum / static_cast<double>(n);
  out.share_above_095 = static_cast<double>(above95) / static_cast<double>(n);
  out.share_above_099 = static_cast<double>(above99) / static_cast<double>(n);

  std::vector<double> col;
  double width_sum = 0.0;
  out.countries.reserve(nc);
  for (std::size_t j = 0; j < nc; ++j) {
    col.clear();
    for (std::size_t s = 0; s < n; ++s) {
      const int r = block.ranks[s * nc + j];
      if (r > 0) col.push_back(r);
    }
    RankInterval ri;
    ri.economy = baseline.rows[j].economy;
    ri.baseline_rank = baseline.rows[j].rank;
    if (col.empty()) {
      ri.q025 = ri.q50 = ri.q975 = ri.baseline_rank;
    } else {
      std::sort(col.begin(), col.end());
      ri.q025 = stats::quantile_sorted(col, 0.025);
      ri.q50 = stats::quantile_sorted(col, 0.5);
      ri.q975 = stats::quantile_sorted(col, 0.975);
    }
    ri.ci_width = ri.q975 - ri.q025;
    width_sum += ri.ci_width;
    out.countries.push_back(std::move(ri));
  }
  out.mean_ci_width = nc > 0 ? width_sum / static_cast<double>(nc) : 0.0;
  return out;
}

McResult run_monte_carlo(const DataBundle& bundle, const McConfig& config) {
  return run_monte_carlo(build_raw_panel(bundle), config);
}

VarianceShares decompose_variance(const RawDimensionPanel& raw, const McConfig& config) {
  config.validate();
  const auto baseline = baseline_ranking(raw, config.min_years);
  const std::size_t nc = baseline.rows.size();

  auto ensemble = [&](int e, bool weights, bool noise, bool normalization) {
    McConfig c = config;
    c.seed = stream_seed(config.seed, static_cast<std::uint64_t>(e + 1));
    c.equal_weights = weights ? config.equal_weights : true;
    c.noise_halfwidth = noise ? config.noise_halfwidth : 0.0;
    c.p_switch = normalization ? config.p_switch : 0.0;
    return rank_variance_mean(simulate(raw, baseline, c), nc);
  };

  VarianceShares out;
  out.weight_variance = ensemble(0, true, false, false);
  out.noise_variance = ensemble(1, false, true, false);
  out.normalization_variance = ensemble(2, false, false, true);
  const double total = out.weight_variance + out.noise_variance + out.normalization_variance;
  if (!(total > 0.0)) throw Error(ErrorKind::AllVariancesZero, "no uncertainty source moved any rank");
  out.weight_share = out.weight_variance / total;
  out.noise_share = out.noise_variance / total;
  out.normalization_share = out.normalization_variance / total;
  return out;
}

VarianceShares decompose_variance(const DataBundle& bundle, const McConfig& config) {
  return decompose_variance(build_raw_panel(bundle), config);
}

}  // namespace mcvi
