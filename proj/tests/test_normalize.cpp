#include <algorithm>
#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "mcvi/normalize.hpp"
#include "support.hpp"

using namespace mcvi;
using mcvi::test::throws_kind;

namespace {

std::vector<double> present(const Column& c) {
  std::vector<double> v;
  for (const auto& x : c) {
    if (x) v.push_back(*x);
  }
  return v;
}

}  // namespace

TEST(PooledRank, MatchesBruteForceOracle) {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = 1 + rng.below(200);
    const auto col = mcvi::test::tied_column(rng, n, 0.1);
    const auto dir = trial % 2 ? Direction::HigherIsVulnerable : Direction::LowerIsVulnerable;
    if (present(Column(col.begin(), col.end())).empty()) continue;

    std::vector<double> oriented;
    for (const auto& x : col) {
      if (x) oriented.push_back(dir == Direction::LowerIsVulnerable ? -*x : *x);
    }
    const auto expect = mcvi::test::brute_force_ranks(oriented);
    const double N = static_cast<double>(oriented.size());

    const auto got = pooled_fractional_rank(col, dir);
    ASSERT_EQ(got.size(), col.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < col.size(); ++i) {
      ASSERT_EQ(got[i].has_value(), col[i].has_value());
      if (!got[i]) continue;
      EXPECT_NEAR(*got[i], expect[j++] / N, 1e-12);
    }
  }
}

TEST(PooledRank, MeanIdentityHoldsWithTies) {
  SplitMix64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const auto col = mcvi::test::tied_column(rng, 1 + rng.below(500), 0.2);
    const auto v = present(col);
    if (v.empty()) continue;
    const auto r = present(pooled_fractional_rank(col, Direction::HigherIsVulnerable));
    double s = 0.0;
    for (double x : r) s += x;
    const double N = static_cast<double>(r.size());
    EXPECT_NEAR(s / N, (N + 1.0) / (2.0 * N), 1e-12);
  }
}

TEST(PooledRank, MonotoneTransformInvariance) {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto col = mcvi::test::tied_column(rng, 2 + rng.below(150), 0.1);
    Column shifted = col;
    for (auto& x : shifted) {
      if (x) x = std::exp(*x) * 3.0 + 1.0;
    }
    EXPECT_EQ(pooled_fractional_rank(col, Direction::HigherIsVulnerable),
              pooled_fractional_rank(shifted, Direction::HigherIsVulnerable));
  }
}

TEST(PooledRank, OrientationAndBounds) {
  const Column c{3.0, 1.0, std::nullopt, 2.0};
  const auto hi = pooled_fractional_rank(c, Direction::HigherIsVulnerable);
  const auto lo = pooled_fractional_rank(c, Direction::LowerIsVulnerable);
  EXPECT_EQ(*hi[0], 1.0);
  EXPECT_DOUBLE_EQ(*hi[1], 1.0 / 3.0);
  EXPECT_FALSE(hi[2].has_value());
  EXPECT_DOUBLE_EQ(*lo[0], 1.0 / 3.0);
  EXPECT_EQ(*lo[1], 1.0);
  EXPECT_TRUE(throws_kind(ErrorKind::AllMissing, [] {
    pooled_fractional_rank(Column{std::nullopt, std::nullopt}, Direction::LowerIsVulnerable);
  }));
}

TEST(PooledRank, OrderPreservation) {
  SplitMix64 rng(4);
  const auto col = mcvi::test::tied_column(rng, 300);
  const auto r = pooled_fractional_rank(col, Direction::HigherIsVulnerable);
  for (std::size_t i = 0; i < col.size(); ++i) {
    EXPECT_GT(*r[i], 0.0);
    EXPECT_LE(*r[i], 1.0);
    for (std::size_t j = 0; j < col.size(); j += 7) {
      if (*col[i] > *col[j]) EXPECT_GT(*r[i], *r[j]);
      if (*col[i] == *col[j]) EXPECT_EQ(*r[i], *r[j]);
    }
  }
}

TEST(PooledRank, MassiveTieAtTheMaximum) {
  // 40% of 1000 observations share the maximum.
  Column c;
  for (int i = 0; i < 600; ++i) c.push_back(static_cast<double>(i) / 1000.0);
  for (int i = 0; i < 400; ++i) c.push_back(1.0);
  const auto r = pooled_fractional_rank(c, Direction::HigherIsVulnerable);
  const double N = 1000.0, f = 0.4;
  EXPECT_NEAR(*r.back(), 1.0 - (f * N - 1.0) / (2.0 * N), 1e-12);
}

TEST(WithinYearRank, RanksEachYearSeparately) {
  const Column v{1.0, 5.0, 2.0, 10.0, std::nullopt, 20.0};
  const std::vector<int> y{2006, 2006, 2006, 2007, 2007, 2007};
  const auto r = within_year_rank(v, y, Direction::HigherIsVulnerable);
  EXPECT_DOUBLE_EQ(*r[0], 1.0 / 3.0);
  EXPECT_EQ(*r[1], 1.0);
  EXPECT_DOUBLE_EQ(*r[2], 2.0 / 3.0);
  EXPECT_EQ(*r[3], 0.5);
  EXPECT_FALSE(r[4].has_value());
  EXPECT_EQ(*r[5], 1.0);

  SplitMix64 rng(5);
  const auto col = mcvi::test::tied_column(rng, 400, 0.1);
  std::vector<int> years(col.size());
  for (auto& yy : years) yy = 2006 + static_cast<int>(rng.below(5));
  const auto w = within_year_rank(col, years, Direction::LowerIsVulnerable);
  for (int yy = 2006; yy <= 2010; ++yy) {
    Column sub;
    std::vector<std::optional<double>> got;
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (years[i] != yy) continue;
      sub.push_back(col[i]);
      got.push_back(w[i]);
    }
    EXPECT_EQ(got, pooled_fractional_rank(sub, Direction::LowerIsVulnerable));
  }
}

TEST(MinMax, ScalesAndFlips) {
  const Column v{2.0, 4.0, std::nullopt, 6.0};
  const auto hi = pooled_minmax(v, Direction::HigherIsVulnerable);
  const auto lo = pooled_minmax(v, Direction::LowerIsVulnerable);
  EXPECT_EQ(*hi[0], 0.0);
  EXPECT_EQ(*hi[1], 0.5);
  EXPECT_EQ(*hi[3], 1.0);
  EXPECT_EQ(*lo[0], 1.0);
  EXPECT_EQ(*lo[3], 0.0);
  EXPECT_FALSE(lo[2].has_value());
  EXPECT_TRUE(throws_kind(ErrorKind::ConstantColumn,
                          [] { pooled_minmax(Column{1.0, 1.0}, Direction::HigherIsVulnerable); }));
}

TEST(NormalizePanel, DirectionsAndD2Average) {
  const auto raw = build_raw_panel(generate_fixture(20, 5, 42));
  for (auto m : {NormalizationMethod::PooledRank, NormalizationMethod::WithinYearRank, NormalizationMethod::PooledMinMax}) {
    const auto n = normalize_panel(raw, m);
    ASSERT_EQ(n.rows.size(), raw.rows.size());
    EXPECT_EQ(n.method, m);
    for (std::size_t i = 0; i < n.rows.size(); ++i) {
      const auto& r = n.rows[i];
      EXPECT_EQ(r.economy, raw.rows[i].economy);
      for (const auto& d : {r.d1, r.d2a, r.d2b, r.d2, r.d3}) {
        if (!d) continue;
        EXPECT_GE(*d, 0.0);
        EXPECT_LE(*d, 1.0);
        if (m != NormalizationMethod::PooledMinMax) EXPECT_GT(*d, 0.0);
      }
      if (r.d2a && r.d2b) {
        EXPECT_EQ(*r.d2, (*r.d2a + *r.d2b) / 2.0);
      } else {
        EXPECT_FALSE(r.d2.has_value());
      }
      EXPECT_EQ(r.d2b.has_value(), raw.rows[i].has_bilateral());
    }
  }

  const auto n = normalize_panel(raw, NormalizationMethod::PooledRank);
  for (std::size_t i = 0; i < raw.rows.size(); ++i) {
    for (std::size_t j = 0; j < raw.rows.size(); ++j) {
      if (raw.rows[i].lsci && raw.rows[j].lsci && *raw.rows[i].lsci < *raw.rows[j].lsci) {
        EXPECT_GT(*n.rows[i].d1, *n.rows[j].d1);
      }
      if (raw.rows[i].port_hhi && raw.rows[j].port_hhi && *raw.rows[i].port_hhi < *raw.rows[j].port_hhi) {
        EXPECT_LT(*n.rows[i].d3, *n.rows[j].d3);
      }
    }
  }
}

TEST(NormalizePanel, ParsesMethodNames) {
  EXPECT_EQ(parse_normalization("pooled-rank"), NormalizationMethod::PooledRank);
  EXPECT_EQ(parse_normalization("within-year"), NormalizationMethod::WithinYearRank);
  EXPECT_EQ(parse_normalization("minmax"), NormalizationMethod::PooledMinMax);
  EXPECT_FALSE(parse_normalization("zscore").has_value());
  for (auto m : {NormalizationMethod::PooledRank, NormalizationMethod::WithinYearRank, NormalizationMethod::PooledMinMax}) {
    EXPECT_EQ(parse_normalization(to_string(m)), m);
  }
}

TEST(PooledRank, HandValues) {
  const std::vector<std::optional<double>> v{10.0, 20.0, 20.0, 40.0};
  const auto r = pooled_fractional_rank(v, Direction::HigherIsVulnerable);
  const std::vector<double> want{0.25, 0.625, 0.625, 1.0};
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(*r[i], want[i]);

  const std::vector<std::optional<double>> w{1.0, 2.0, 3.0, 3.0};
  const std::vector<int> years{2006, 2006, 2006, 2007};
  const auto y = within_year_rank(w, years, Direction::HigherIsVulnerable);
  EXPECT_DOUBLE_EQ(*y[0], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(*y[1], 2.0 / 3.0);
  EXPECT_EQ(*y[2], 1.0);
  EXPECT_EQ(*y[3], 1.0);
}
