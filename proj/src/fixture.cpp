// Synthetic bundle generator.
//
// Every economy i gets a latent connectivity z_i ~ N(0,1); year t shifts it
// by a small upward trend plus noise. All indicators are driven by that
// latent so the synthetic panel has the qualitative structure of the real
// one (strongly correlated D1/D2, a weaker D3, SIDS more vulnerable):
//
//   lsci      = exp(2.5 + z_it), 2 decimals
//   ports     = 1..6 per economy, more for high z; plsci log-normal around exp(z)
//   lsbci     = pair (i,j) linked with p = logistic(-0.3 + 1.2 (z_i + z_j) / 2),
//               value logistic(0.8 (z_i + z_j) / 2 - 0.5 + noise), 4 decimals
//   external  = gdp_pc, trade_open every covered year; lpi on odd offsets;
//               freight on the second half of the year range
//
// Coverage is deliberately unbalanced: rows go missing at small random rates
// and the last economy enters one year late. All draws come from a single
// SplitMix64 stream consumed in a fixed order.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "mcvi/error.hpp"
#include "mcvi/ingest.hpp"
#include "mcvi/rng.hpp"

namespace mcvi {

namespace {

double round_to(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(x * scale) / scale;
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::string code_for(int i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "E%0*d", width, i + 1);
  return buf;
}

}  // namespace

DataBundle generate_fixture(int n_economies, int n_years, std::uint64_t seed) {
  if (n_economies < 4) throw Error(ErrorKind::InvalidConfig, "fixture needs at least 4 economies");
  if (n_years < 2) throw Error(ErrorKind::InvalidConfig, "fixture needs at least 2 years");
  if (n_years > 20) throw Error(ErrorKind::InvalidConfig, "fixture years must fit 2006-2025 (at most 20)");

  SplitMix64 rng(seed);
  const YearRange years{2006, 2006 + n_years - 1};
  const int width = n_economies >= 1000 ? 4 : 3;
  const auto n = static_cast<std::size_t>(n_economies);

  std::vector<double> z(n);
  for (auto& v : z) v = rng.normal();

  // Classification: the least connected quarter (at least 20%) are SIDS.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return z[a] < z[b]; });
  std::vector<std::size_t> position(n);
  for (std::size_t p = 0; p < n; ++p) position[order[p]] = p;
  const auto n_sids = static_cast<std::size_t>(std::ceil(0.25 * static_cast<double>(n)));

  Tables tables;
  static constexpr Region kRegions[] = {Region::Africa, Region::Americas, Region::Asia, Region::Europe,
                                        Region::Oceania};
  std::vector<bool> sids(n);
  for (std::size_t i = 0; i < n; ++i) {
    Classification c;
    c.economy = code_for(static_cast<int>(i), width);
    c.name = "Economy " + c.economy.substr(1);
    c.sids = position[i] < n_sids;
    c.lldc = n >= 8 && position[i] == n_sids;
    c.ldc = z[i] < -0.3 && rng.uniform() < 0.6;
    c.region = c.sids ? Region::Oceania : kRegions[i % 5];
    sids[i] = c.sids;
    tables.classifications.rows.push_back(std::move(c));
  }

  // Per-economy structure that persists across years.
  std::vector<int> n_ports(n);
  std::vector<std::vector<double>> port_base(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = std::round(2.5 + 1.5 * z[i] + rng.uniform(-1.0, 1.0));
    n_ports[i] = static_cast<int>(std::clamp(k, 1.0, 6.0));
    for (int p = 0; p < n_ports[i]; ++p) port_base[i].push_back(std::exp(z[i] + 0.8 * rng.normal()));
  }
  std::vector<std::vector<bool>> linked(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      linked[i][j] = rng.uniform() < logistic(-0.3 + 1.2 * (z[i] + z[j]) / 2.0);
    }
  }

  for (int t = 0; t < n_years; ++t) {
    const int year = years.first + t;
    std::vector<double> zt(n);
    for (std::size_t i = 0; i < n; ++i) zt[i] = z[i] + 0.03 * t + 0.1 * rng.normal();
    std::vector<bool> present(n);
    for (std::size_t i = 0; i < n; ++i) present[i] = !(i + 1 == n && t == 0);

    for (std::size_t i = 0; i < n; ++i) {
      if (!present[i]) continue;
      const auto& econ = tables.classifications.rows[i].economy;
      const bool drop_lsci = rng.uniform() < 0.04;
      const double lsci = round_to(std::exp(2.5 + zt[i]), 2);
      if (!drop_lsci) tables.lsci.rows.push_back({econ, year, lsci});

      const bool drop_ports = rng.uniform() < 0.03;
      for (int p = 0; p < n_ports[i]; ++p) {
        const bool idle = rng.uniform() < 0.02;
        const double score = idle ? 0.0 : round_to(port_base[i][p] * std::exp(0.03 * t + 0.1 * rng.normal()) * 10.0, 2);
        if (drop_ports) continue;
        char id[48];
        std::snprintf(id, sizeof id, "%s-P%d", econ.c_str(), p + 1);
        tables.plsci.rows.push_back({id, econ, year, score});
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!linked[i][j]) continue;
        const bool dropped = rng.uniform() < 0.05;
        const double v = std::clamp(round_to(logistic(0.8 * (zt[i] + zt[j]) / 2.0 - 0.5 + 0.1 * rng.normal()), 4),
                                    0.0, 1.0);
        if (dropped || !present[i] || !present[j]) continue;
        tables.lsbci.rows.push_back(
            {tables.classifications.rows[i].economy, tables.classifications.rows[j].economy, year, v});
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      if (!present[i]) continue;
      ExternalRow row;
      row.economy = tables.classifications.rows[i].economy;
      row.year = year;
      const double g = round_to(std::exp(8.5 + 0.9 * zt[i] + 0.2 * rng.normal()), 2);
      const double tr = round_to(std::exp(4.2 - 0.25 * z[i] + (sids[i] ? 0.3 : 0.0) + 0.1 * rng.normal()), 2);
      const double lpi = round_to(std::clamp(3.0 + 0.5 * zt[i] + 0.2 * rng.normal(), 1.0, 5.0), 3);
      const double fr = round_to(std::exp(1.8 - 0.3 * zt[i] + 0.2 * rng.normal()), 3);
      if (rng.uniform() >= 0.05) row.gdp_pc = g;
      row.trade_open = tr;
      if (t % 2 == 1) row.lpi = lpi;
      if (t >= n_years / 2) row.freight_advalorem = fr;
      tables.external.rows.push_back(std::move(row));
    }
  }

  auto by_key = [](const auto& a, const auto& b) { return std::tie(a.economy, a.year) < std::tie(b.economy, b.year); };
  std::sort(tables.lsci.rows.begin(), tables.lsci.rows.end(), by_key);
  std::sort(tables.external.rows.begin(), tables.external.rows.end(), by_key);
  std::sort(tables.lsbci.rows.begin(), tables.lsbci.rows.end(), [](const LsbciRow& a, const LsbciRow& b) {
    return std::tie(a.economy_a, a.economy_b, a.year) < std::tie(b.economy_a, b.economy_b, b.year);
  });
  std::sort(tables.plsci.rows.begin(), tables.plsci.rows.end(), [](const PlsciRow& a, const PlsciRow& b) {
    return std::tie(a.economy, a.year, a.port_id) < std::tie(b.economy, b.year, b.port_id);
  });

  char prov[96];
  std::snprintf(prov, sizeof prov, "fixture(economies=%d, years=%d, seed=%llu)", n_economies, n_years,
                static_cast<unsigned long long>(seed));
  tables.provenance = {{std::string(prov) + ":classifications", tables.classifications.rows.size()},
                       {std::string(prov) + ":lsci", tables.lsci.rows.size()},
                       {std::string(prov) + ":lsbci", tables.lsbci.rows.size()},
                       {std::string(prov) + ":plsci", tables.plsci.rows.size()},
                       {std::string(prov) + ":external", tables.external.rows.size()}};
  return validate_bundle(std::move(tables), years);
}

}  // namespace mcvi
