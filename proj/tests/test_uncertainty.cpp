#include <chrono>
#include <cmath>

#include <gtest/gtest.h>

#include "mcvi/uncertainty.hpp"
#include "support.hpp"

using namespace mcvi;
using mcvi::test::throws_kind;

namespace {

const RawDimensionPanel& fixture_panel() {
  static const RawDimensionPanel raw = build_raw_panel(generate_fixture(20, 5, 42));
  return raw;
}

void expect_identical(const McResult& a, const McResult& b) {
  ASSERT_EQ(a.sims.size(), b.sims.size());
  for (std::size_t i = 0; i < a.sims.size(); ++i) {
    EXPECT_EQ(a.sims[i].weights.w1, b.sims[i].weights.w1);
    EXPECT_EQ(a.sims[i].weights.w2, b.sims[i].weights.w2);
    EXPECT_EQ(a.sims[i].within_year, b.sims[i].within_year);
    EXPECT_EQ(a.sims[i].rho, b.sims[i].rho);
  }
  ASSERT_EQ(a.countries.size(), b.countries.size());
  for (std::size_t i = 0; i < a.countries.size(); ++i) {
    EXPECT_EQ(a.countries[i].economy, b.countries[i].economy);
    EXPECT_EQ(a.countries[i].q025, b.countries[i].q025);
    EXPECT_EQ(a.countries[i].q50, b.countries[i].q50);
    EXPECT_EQ(a.countries[i].q975, b.countries[i].q975);
  }
  EXPECT_EQ(a.mean_rho, b.mean_rho);
  EXPECT_EQ(a.mean_ci_width, b.mean_ci_width);
}

}  // namespace

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  auto a = make_stream(42, 0), b = make_stream(42, 0), c = make_stream(42, 1);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  // Reference output of SplitMix64 seeded with 0.
  SplitMix64 z(0);
  EXPECT_EQ(z.next(), 0xE220A8397B1DCDAFULL);
  SplitMix64 u(9);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    ASSERT_LT(u.below(7), 7u);
  }
}

TEST(Rng, GammaAndNormalMoments) {
  SplitMix64 rng(3);
  for (double shape : {0.5, 1.0, 20.0}) {
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double g = sample_gamma(shape, rng);
      s += g;
      s2 += g * g;
    }
    const double m = s / n, v = s2 / n - m * m;
    EXPECT_NEAR(m, shape, 0.02 * shape + 0.01);
    EXPECT_NEAR(v, shape, 0.05 * shape + 0.01);
  }
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / 200000, 0.0, 0.01);
  EXPECT_NEAR(s2 / 200000, 1.0, 0.02);
}

TEST(Dirichlet, SumsToOneWithSymmetricMoments) {
  SplitMix64 rng(4);
  const int n = 100000;
  const double alpha = 20.0;
  std::array<double, 3> s{}, s2{};
  for (int i = 0; i < n; ++i) {
    const auto w = sample_dirichlet(alpha, 3, rng);
    ASSERT_NEAR(w[0] + w[1] + w[2], 1.0, 1e-12);
    for (int j = 0; j < 3; ++j) {
      s[static_cast<std::size_t>(j)] += w[static_cast<std::size_t>(j)];
      s2[static_cast<std::size_t>(j)] += w[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
    }
  }
  const double var = (1.0 / 3.0) * (2.0 / 3.0) / (3.0 * alpha + 1.0);
  for (int j = 0; j < 3; ++j) {
    const double m = s[static_cast<std::size_t>(j)] / n;
    EXPECT_NEAR(m, 1.0 / 3.0, 2e-3);
    EXPECT_NEAR(s2[static_cast<std::size_t>(j)] / n - m * m, var, 2e-4);
  }
  const auto w = sample_dirichlet_weights(alpha, rng);
  EXPECT_NO_THROW(w.validate());
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidConfig, [&] { sample_dirichlet(0.0, 3, rng); }));
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidConfig, [&] { sample_dirichlet(1.0, 0, rng); }));
}

TEST(Perturb, MultiplicativeBoundsAndMissingness) {
  const auto& raw = fixture_panel();
  SplitMix64 rng(5);
  const auto p = perturb_indicators(raw, 0.05, rng);
  ASSERT_EQ(p.rows.size(), raw.rows.size());
  for (std::size_t i = 0; i < raw.rows.size(); ++i) {
    const auto& a = raw.rows[i];
    const auto& b = p.rows[i];
    auto check = [](const std::optional<double>& x, const std::optional<double>& y) {
      ASSERT_EQ(x.has_value(), y.has_value());
      if (!x) return;
      EXPECT_GE(*y, *x * 0.95 - 1e-12);
      EXPECT_LE(*y, *x * 1.05 + 1e-12);
    };
    check(a.lsci, b.lsci);
    check(a.mean_lsbci, b.mean_lsbci);
    check(a.port_hhi, b.port_hhi);
    if (a.has_bilateral()) {
      check(a.partner_count, b.partner_count);
    } else {
      EXPECT_EQ(b.partner_count, a.partner_count);
    }
  }
  SplitMix64 r0(5);
  const auto same = perturb_indicators(raw, 0.0, r0);
  for (std::size_t i = 0; i < raw.rows.size(); ++i) EXPECT_EQ(same.rows[i].lsci, raw.rows[i].lsci);
}

TEST(MonteCarlo, DegenerateConfigCollapsesToBaseline) {
  McConfig c;
  c.n_sims = 50;
  c.equal_weights = true;
  c.noise_halfwidth = 0.0;
  c.p_switch = 0.0;
  const auto r = run_monte_carlo(fixture_panel(), c);
  EXPECT_EQ(r.mean_rho, 1.0);
  EXPECT_EQ(r.min_rho, 1.0);
  EXPECT_EQ(r.mean_ci_width, 0.0);
  for (const auto& s : r.sims) EXPECT_EQ(s.rho, 1.0);
  for (const auto& ci : r.countries) {
    EXPECT_EQ(ci.ci_width, 0.0);
    EXPECT_EQ(ci.q50, ci.baseline_rank);
  }
}

TEST(MonteCarlo, BitIdenticalAcrossRunsAndThreadCounts) {
  McConfig c;
  c.n_sims = 200;
  c.seed = 1234;
  c.n_threads = 1;
  const auto a = run_monte_carlo(fixture_panel(), c);
  const auto b = run_monte_carlo(fixture_panel(), c);
  c.n_threads = 8;
  const auto p = run_monte_carlo(fixture_panel(), c);
  expect_identical(a, b);
  expect_identical(a, p);
  c.seed = 1235;
  EXPECT_NE(run_monte_carlo(fixture_panel(), c).mean_rho, a.mean_rho);
}

TEST(MonteCarlo, SerialAndParallelKernelsAgree) {
  const auto& raw = fixture_panel();
  const auto base = rank_countries(aggregate_mcvi(normalize_panel(raw, NormalizationMethod::PooledRank), WeightVector::equal()));
  McConfig c;
  c.n_sims = 64;
  c.n_threads = 4;
  const auto s = kernels::simulate_serial(raw, base, c);
  const auto p = kernels::simulate_parallel(raw, base, c);
  EXPECT_EQ(s.ranks, p.ranks);
  ASSERT_EQ(s.draws.size(), p.draws.size());
  for (std::size_t i = 0; i < s.draws.size(); ++i) EXPECT_EQ(s.draws[i].rho, p.draws[i].rho);
}

TEST(MonteCarlo, QuantileSanityAtDefaults) {
  McConfig c;
  c.n_sims = 1000;
  const auto start = std::chrono::steady_clock::now();
  const auto r = run_monte_carlo(fixture_panel(), c);
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  EXPECT_LT(took.count(), 60.0);

  const double n = static_cast<double>(r.countries.size());
  int covered = 0;
  for (const auto& ci : r.countries) {
    EXPECT_LE(ci.q025, ci.q50);
    EXPECT_LE(ci.q50, ci.q975);
    EXPECT_GE(ci.q025, 1.0);
    EXPECT_LE(ci.q975, n);
    EXPECT_NEAR(ci.ci_width, ci.q975 - ci.q025, 1e-12);
    covered += (ci.baseline_rank >= ci.q025 && ci.baseline_rank <= ci.q975) ? 1 : 0;
  }
  EXPECT_GE(covered, static_cast<int>(std::ceil(0.9 * n)));
  for (const auto& s : r.sims) {
    EXPECT_GE(s.rho, -1.0);
    EXPECT_LE(s.rho, 1.0);
  }
  EXPECT_GE(r.share_above_095, r.share_above_099);
}

TEST(MonteCarlo, MoreNoiseNeverNarrowsIntervals) {
  McConfig c;
  c.n_sims = 300;
  c.equal_weights = true;
  c.p_switch = 0.0;
  c.noise_halfwidth = 0.05;
  const double narrow = run_monte_carlo(fixture_panel(), c).mean_ci_width;
  c.noise_halfwidth = 0.10;
  const double wide = run_monte_carlo(fixture_panel(), c).mean_ci_width;
  EXPECT_GE(wide, narrow);
}

TEST(VarianceDecomposition, SharesAreAProbabilityVector) {
  McConfig c;
  c.n_sims = 200;
  const auto v = decompose_variance(fixture_panel(), c);
  EXPECT_GE(v.weight_share, 0.0);
  EXPECT_GE(v.noise_share, 0.0);
  EXPECT_GE(v.normalization_share, 0.0);
  EXPECT_NEAR(v.weight_share + v.noise_share + v.normalization_share, 1.0, 1e-9);
}

TEST(VarianceDecomposition, SingleActiveSourceTakesEverything) {
  McConfig c;
  c.n_sims = 100;
  c.noise_halfwidth = 0.0;
  c.p_switch = 0.0;
  auto v = decompose_variance(fixture_panel(), c);
  EXPECT_EQ(v.weight_share, 1.0);
  EXPECT_EQ(v.noise_share, 0.0);

  c.noise_halfwidth = 0.05;
  c.equal_weights = true;
  v = decompose_variance(fixture_panel(), c);
  EXPECT_EQ(v.noise_share, 1.0);

  c.noise_halfwidth = 0.0;
  c.p_switch = 0.5;
  v = decompose_variance(fixture_panel(), c);
  EXPECT_EQ(v.normalization_share, 1.0);

  c.p_switch = 0.0;
  EXPECT_TRUE(throws_kind(ErrorKind::AllVariancesZero, [&] { decompose_variance(fixture_panel(), c); }));
}

TEST(McConfig, Validation) {
  McConfig c;
  EXPECT_NO_THROW(c.validate());
  for (auto bad : std::initializer_list<void (*)(McConfig&)>{
           [](McConfig& x) { x.n_sims = 0; }, [](McConfig& x) { x.dirichlet_alpha = -1; },
           [](McConfig& x) { x.noise_halfwidth = 1.5; }, [](McConfig& x) { x.p_switch = 1.1; },
           [](McConfig& x) { x.min_years = 0; }, [](McConfig& x) { x.n_threads = -1; }}) {
    McConfig d;
    bad(d);
    EXPECT_TRUE(throws_kind(ErrorKind::InvalidConfig, [&] { d.validate(); }));
  }
}
