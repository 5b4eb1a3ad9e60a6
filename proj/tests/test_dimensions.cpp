#include <algorithm>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "mcvi/dimensions.hpp"
#include "support.hpp"

using namespace mcvi;
using mcvi::test::throws_kind;

namespace {

DataBundle small_bundle() {
  Tables t;
  std::istringstream cls(
      "economy,name,sids,ldc,lldc,region\n"
      "AAA,A,0,0,0,Asia\nBBB,B,1,0,0,Oceania\nCCC,C,0,1,0,Africa\nDDD,D,0,0,1,Africa\n");
  t.classifications = load_classifications(cls);
  std::istringstream lsci("economy,year,lsci\nAAA,2006,50\nAAA,2007,55\nBBB,2006,4\nCCC,2006,12\n");
  t.lsci = load_lsci(lsci);
  std::istringstream lsbci(
      "economy_a,economy_b,year,lsbci\nAAA,BBB,2006,0.2\nAAA,CCC,2006,0.4\nBBB,CCC,2006,0\nAAA,BBB,2007,0.3\n");
  t.lsbci = load_lsbci(lsbci);
  std::istringstream plsci(
      "port_id,economy,year,plsci\nA1,AAA,2006,30\nA2,AAA,2006,10\nB1,BBB,2006,5\nC1,CCC,2006,0\nC2,CCC,2006,0\n"
      "D1,DDD,2007,3\n");
  t.plsci = load_plsci(plsci);
  return validate_bundle(std::move(t));
}

}  // namespace

TEST(PortHhi, MatchesDirectSumOfSquares) {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto k = 1 + rng.below(30);
    std::vector<double> p(k);
    for (auto& x : p) x = rng.uniform() < 0.15 ? 0.0 : rng.uniform(0.01, 100.0);
    if (std::none_of(p.begin(), p.end(), [](double x) { return x > 0.0; })) p[0] = 1.0;

    double sum = 0.0, sq = 0.0;
    std::size_t active = 0;
    for (double x : p) {
      sum += x;
      sq += x * x;
      active += x > 0.0 ? 1 : 0;
    }
    const double h = port_hhi(p);
    EXPECT_NEAR(h, sq / (sum * sum), 1e-12);
    EXPECT_GE(h, 1.0 / static_cast<double>(active) - 1e-15);
    EXPECT_LE(h, 1.0 + 1e-15);

    const double c = rng.uniform(1e-3, 1e3);
    std::vector<double> scaled(p);
    for (auto& x : scaled) x *= c;
    EXPECT_NEAR(port_hhi(scaled), h, 1e-12);
  }
}

TEST(PortHhi, SinglePortIsExactlyOne) {
  for (double v : {1e-9, 0.3, 7.0, 1e6}) {
    EXPECT_EQ(port_hhi(std::vector<double>{v}), 1.0);
    EXPECT_EQ(port_hhi(std::vector<double>{0.0, v, 0.0}), 1.0);
  }
  EXPECT_LT(port_hhi(std::vector<double>{1.0, 1e-9}), 1.0);
  EXPECT_DOUBLE_EQ(port_hhi(std::vector<double>{2.0, 2.0, 2.0, 2.0}), 0.25);
  EXPECT_TRUE(throws_kind(ErrorKind::NoActivePorts, [] { port_hhi(std::vector<double>{0.0, 0.0}); }));
  EXPECT_TRUE(throws_kind(ErrorKind::NoActivePorts, [] { port_hhi(std::vector<double>{}); }));
}

TEST(MeanBilateral, LiesWithinRange) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(1 + rng.below(40));
    for (auto& x : v) x = rng.uniform();
    const double m = mean_bilateral(v);
    EXPECT_GE(m, *std::min_element(v.begin(), v.end()));
    EXPECT_LE(m, *std::max_element(v.begin(), v.end()));
  }
  EXPECT_TRUE(throws_kind(ErrorKind::EmptyPartnerSet, [] { mean_bilateral(std::vector<double>{}); }));
}

TEST(PartnerCount, CountsDistinctPartnersIncludingZeroScores) {
  const auto b = small_bundle();
  const auto& rows = b.lsbci().rows;
  EXPECT_EQ(partner_count(rows, "AAA", 2006), 2u);
  EXPECT_EQ(partner_count(rows, "BBB", 2006), 2u);
  EXPECT_EQ(partner_count(rows, "CCC", 2006), 2u);
  EXPECT_EQ(partner_count(rows, "AAA", 2007), 1u);
  EXPECT_EQ(partner_count(rows, "DDD", 2006), 0u);
}

TEST(RawPanel, CoverageAndMissingness) {
  const auto b = small_bundle();
  const auto p = build_raw_panel(b);
  // (AAA,2006) (AAA,2007) (BBB,2006) (BBB,2007) (CCC,2006) (DDD,2007)
  ASSERT_EQ(p.rows.size(), 6u);
  EXPECT_TRUE(std::is_sorted(p.rows.begin(), p.rows.end(), [](const auto& a, const auto& c) {
    return std::tie(a.economy, a.year) < std::tie(c.economy, c.year);
  }));

  const auto& a06 = p.rows[0];
  EXPECT_EQ(*a06.lsci, 50.0);
  EXPECT_DOUBLE_EQ(*a06.mean_lsbci, 0.3);
  EXPECT_EQ(a06.partner_count, 2.0);
  EXPECT_DOUBLE_EQ(*a06.port_hhi, 0.625);

  const auto& a07 = p.rows[1];
  EXPECT_FALSE(a07.port_hhi.has_value());
  EXPECT_EQ(a07.partner_count, 1.0);

  const auto& b07 = p.rows[3];
  EXPECT_FALSE(b07.lsci.has_value());
  EXPECT_DOUBLE_EQ(*b07.mean_lsbci, 0.3);

  const auto& c06 = p.rows[4];
  EXPECT_FALSE(c06.port_hhi.has_value()) << "all-zero ports give a missing HHI";
  EXPECT_DOUBLE_EQ(*c06.mean_lsbci, 0.2);

  const auto& d07 = p.rows[5];
  EXPECT_FALSE(d07.has_bilateral());
  EXPECT_EQ(d07.partner_count, 0.0);
  EXPECT_EQ(*d07.port_hhi, 1.0);
}

TEST(RawPanel, IsAPureFunctionOfTheBundle) {
  const auto b = generate_fixture(30, 6, 77);
  const auto p = build_raw_panel(b);
  const auto q = build_raw_panel(b);
  ASSERT_EQ(p.rows.size(), q.rows.size());
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    EXPECT_EQ(p.rows[i].economy, q.rows[i].economy);
    EXPECT_EQ(p.rows[i].lsci, q.rows[i].lsci);
    EXPECT_EQ(p.rows[i].mean_lsbci, q.rows[i].mean_lsbci);
    EXPECT_EQ(p.rows[i].partner_count, q.rows[i].partner_count);
    EXPECT_EQ(p.rows[i].port_hhi, q.rows[i].port_hhi);
  }
}

TEST(RawPanel, RowsAreTheUnionOfSourceKeys) {
  for (std::uint64_t seed : {1u, 42u, 99u}) {
    const auto b = generate_fixture(25, 5, seed);
    std::set<std::pair<std::string, int>> keys;
    for (const auto& r : b.lsci().rows) keys.insert({r.economy, r.year});
    for (const auto& r : b.lsbci().rows) {
      keys.insert({r.economy_a, r.year});
      keys.insert({r.economy_b, r.year});
    }
    for (const auto& r : b.plsci().rows) keys.insert({r.economy, r.year});
    const auto raw = build_raw_panel(b);
    ASSERT_EQ(raw.rows.size(), keys.size());
    auto it = keys.begin();
    for (const auto& r : raw.rows) {
      EXPECT_EQ(r.economy, it->first);
      EXPECT_EQ(r.year, it->second);
      ++it;
    }
  }
}
