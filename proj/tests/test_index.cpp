#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "mcvi/index.hpp"
#include "mcvi/uncertainty.hpp"
#include "support.hpp"

using namespace mcvi;
using mcvi::test::throws_kind;

namespace {

NormalizedPanel random_normalized(SplitMix64& rng, int n_economies, int n_years, double missing = 0.1) {
  NormalizedPanel p;
  for (int e = 0; e < n_economies; ++e) {
    for (int y = 0; y < n_years; ++y) {
      NormalizedRow r;
      r.economy = "C" + std::to_string(100 + e);
      r.year = 2006 + y;
      auto draw = [&]() -> std::optional<double> {
        if (rng.uniform() < missing) return std::nullopt;
        return rng.uniform(0.001, 1.0);
      };
      r.d1 = draw();
      r.d2a = draw();
      r.d2b = draw();
      if (r.d2a && r.d2b) r.d2 = (*r.d2a + *r.d2b) / 2.0;
      r.d3 = draw();
      p.rows.push_back(r);
    }
  }
  return p;
}

}  // namespace

TEST(Weights, Validation) {
  EXPECT_NO_THROW(WeightVector::make(0.5, 0.25, 0.25));
  EXPECT_NO_THROW(WeightVector::make(1.0, 0.0, 0.0));
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidWeights, [] { WeightVector::make(0.5, 0.5, 0.5); }));
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidWeights, [] { WeightVector::make(1.2, -0.1, -0.1); }));
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidWeights, [] { WeightVector::make(0.5, 0.5, 1e-9); }));
}

TEST(Aggregate, ConvexCombinationAndBounds) {
  SplitMix64 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto norm = random_normalized(rng, 15, 4);
    const auto d = sample_dirichlet(1.0, 3, rng);
    const auto w = WeightVector::make(d[0], d[1], 1.0 - d[0] - d[1]);
    const auto idx = aggregate_mcvi(norm, w);

    std::size_t complete = 0;
    for (const auto& r : norm.rows) complete += r.complete() ? 1 : 0;
    EXPECT_EQ(idx.rows.size(), complete);
    EXPECT_EQ(idx.incomplete, norm.rows.size() - complete);

    for (const auto& r : idx.rows) {
      EXPECT_NEAR(r.mcvi, w.w1 * r.d1 + w.w2 * r.d2 + w.w3 * r.d3, 1e-12);
      EXPECT_GE(r.mcvi, std::min({r.d1, r.d2, r.d3}) - 1e-15);
      EXPECT_LE(r.mcvi, std::max({r.d1, r.d2, r.d3}) + 1e-15);
    }
  }
}

TEST(Aggregate, EqualDimensionsReproduceTheInput) {
  SplitMix64 rng(11);
  NormalizedPanel p;
  for (int i = 0; i < 500; ++i) {
    const double v = rng.uniform(0.001, 1.0);
    p.rows.push_back({"E" + std::to_string(i), 2006, v, v, v, v, v});
  }
  for (const auto& w : {WeightVector::equal(), WeightVector::make(0.5, 0.25, 0.25), WeightVector::make(0.2, 0.3, 0.5)}) {
    const auto idx = aggregate_mcvi(p, w);
    for (const auto& r : idx.rows) EXPECT_NEAR(r.mcvi, r.d1, 1e-12);
  }
  // The equal-weight path is the plain average, bit for bit.
  for (const auto& r : aggregate_mcvi(p, WeightVector::equal()).rows) EXPECT_EQ(r.mcvi, (r.d1 + r.d2 + r.d3) / 3.0);
}

TEST(Aggregate, RejectsEmptyAndBadWeights) {
  EXPECT_TRUE(throws_kind(ErrorKind::EmptyIndex, [] { aggregate_mcvi(NormalizedPanel{}, WeightVector::equal()); }));
  SplitMix64 rng(1);
  const auto p = random_normalized(rng, 3, 2, 0.0);
  EXPECT_TRUE(throws_kind(ErrorKind::InvalidWeights, [&] { aggregate_mcvi(p, WeightVector{0.5, 0.5, 0.5}); }));
}

TEST(RankCountries, PermutationWithDeterministicTies) {
  IndexPanel idx;
  auto add = [&](const char* e, int y, double v) { idx.rows.push_back({e, y, v, v, v, v}); };
  add("BBB", 2006, 0.5);
  add("AAA", 2006, 0.5);
  add("CCC", 2006, 0.75);
  add("CCC", 2007, 0.25);
  add("DDD", 2006, 0.2);
  add("DDD", 2007, 0.4);
  add("DDD", 2008, 0.6);

  const auto r = rank_countries(idx, 2);
  ASSERT_EQ(r.rows.size(), 4u);
  // Means: AAA .5, BBB .5, CCC .5, DDD .4
  EXPECT_EQ(r.rows[0].economy, "AAA");
  EXPECT_EQ(r.rows[1].economy, "BBB");
  EXPECT_EQ(r.rows[2].economy, "CCC");
  EXPECT_EQ(r.rows[3].economy, "DDD");
  for (int i = 0; i < 4; ++i) EXPECT_EQ(r.rows[static_cast<std::size_t>(i)].rank, i + 1);
  EXPECT_TRUE(r.find("AAA")->below_min_years);
  EXPECT_FALSE(r.find("CCC")->below_min_years);
  EXPECT_EQ(r.find("DDD")->years_covered, 3);
  EXPECT_NEAR(r.find("DDD")->mean_mcvi, 0.4, 1e-15);
  EXPECT_EQ(r.find("ZZZ"), nullptr);

  EXPECT_TRUE(throws_kind(ErrorKind::InvalidConfig, [&] { rank_countries(idx, 0); }));
  EXPECT_TRUE(throws_kind(ErrorKind::EmptyIndex, [] { rank_countries(IndexPanel{}); }));
}

TEST(RankCountries, RanksArePermutationOnFixture) {
  const auto raw = build_raw_panel(generate_fixture(40, 8, 5));
  const auto idx = aggregate_mcvi(normalize_panel(raw, NormalizationMethod::PooledRank), WeightVector::equal());
  const auto r = rank_countries(idx);
  std::set<int> ranks;
  for (const auto& c : r.rows) ranks.insert(c.rank);
  EXPECT_EQ(ranks.size(), r.rows.size());
  EXPECT_EQ(*ranks.begin(), 1);
  EXPECT_EQ(*ranks.rbegin(), static_cast<int>(r.rows.size()));
  for (std::size_t i = 1; i < r.rows.size(); ++i) EXPECT_GE(r.rows[i - 1].mean_mcvi, r.rows[i].mean_mcvi);
  const auto again = rank_countries(idx);
  for (std::size_t i = 0; i < r.rows.size(); ++i) EXPECT_EQ(r.rows[i].economy, again.rows[i].economy);
}

TEST(PcaWeights, SumToOneAndFavourTheCorrelatedPair) {
  const auto norm = normalize_panel(build_raw_panel(generate_fixture(60, 6, 8)), NormalizationMethod::PooledRank);
  const auto w = derive_pca_weights(norm);
  EXPECT_NEAR(w.w1 + w.w2 + w.w3, 1.0, 1e-12);
  EXPECT_GE(w.w3, 0.0);
  EXPECT_NO_THROW(w.validate());

  const auto same = normalize_panel(mcvi::test::comonotone_panel(12, 3), NormalizationMethod::PooledRank);
  const auto e = derive_pca_weights(same);
  EXPECT_NEAR(e.w1, 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(e.w2, 1.0 / 3.0, 1e-9);
}

TEST(PcaWeights, DegenerateInputs) {
  NormalizedPanel p;
  p.rows.push_back({"A", 2006, 0.1, 0.2, 0.3, 0.25, 0.4});
  EXPECT_TRUE(throws_kind(ErrorKind::DegenerateVariance, [&] { derive_pca_weights(p); }));
  for (int i = 0; i < 10; ++i) p.rows.push_back({"B" + std::to_string(i), 2006, 0.1 * i, 0.5, 0.5, 0.5, 0.01 * i});
  p.rows.erase(p.rows.begin());
  EXPECT_TRUE(throws_kind(ErrorKind::DegenerateVariance, [&] { derive_pca_weights(p); }));
}

TEST(Aggregate, HandValue) {
  NormalizedPanel p;
  p.rows.push_back({"AAA", 2006, 0.2, 0.4, 0.6, 0.5, 0.8});
  const auto idx = aggregate_mcvi(p, WeightVector::equal());
  ASSERT_EQ(idx.rows.size(), 1u);
  EXPECT_DOUBLE_EQ(idx.rows[0].d2, 0.5);
  EXPECT_DOUBLE_EQ(idx.rows[0].mcvi, 0.5);
}
