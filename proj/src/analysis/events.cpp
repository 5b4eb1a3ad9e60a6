#include "mcvi/analysis/events.hpp"

#include <algorithm>

#include "mcvi/error.hpp"

namespace mcvi::analysis {

std::vector<EventSpec> default_events() {
  return {{"covid-19", 2019, 2020}, {"financial-crisis", 2008, 2009}, {"red-sea", 2023, 2024}};
}

EventReport event_study(const IndexPanel& index, const ExternalTable& ext, const EventSpec& spec) {
  if (spec.pre_year >= spec.crisis_year) throw Error(ErrorKind::InvalidConfig, "event needs pre_year < crisis_year", spec.name);
  EventReport out;
  out.spec = spec;
  for (const auto& r : index.rows) {
    if (r.year != spec.pre_year) continue;
    const auto* pre = ext.find(r.economy, spec.pre_year);
    const auto* crisis = ext.find(r.economy, spec.crisis_year);
    if (!pre || !crisis || !pre->trade_open || !crisis->trade_open || !(*pre->trade_open > 0.0)) continue;
    out.countries.push_back({r.economy, r.mcvi, 100.0 * (*crisis->trade_open - *pre->trade_open) / *pre->trade_open, 0});
  }
  out.n = out.countries.size();
  if (out.n < 8) {
    throw Error(ErrorKind::InsufficientData, "event study needs at least 8 matched countries, found " + std::to_string(out.n),
                spec.name);
  }
  std::sort(out.countries.begin(), out.countries.end(), [](const EventCountry& a, const EventCountry& b) {
    if (a.mcvi_pre != b.mcvi_pre) return a.mcvi_pre < b.mcvi_pre;
    return a.economy < b.economy;
  });

  const std::size_t q = out.n / 4;
  const std::size_t rem = out.n % 4;
  std::size_t pos = 0;
  std::array<std::vector<double>, 4> groups;
  for (std::size_t g = 0; g < 4; ++g) {
    const std::size_t size = q + (g < rem ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i, ++pos) {
      out.countries[pos].quartile = static_cast<int>(g) + 1;
      groups[g].push_back(out.countries[pos].pct_change);
    }
    out.quartile_n[g] = size;
    double s = 0.0;
    for (double v : groups[g]) s += v;
    out.quartile_mean[g] = s / static_cast<double>(size);
  }

  std::vector<double> m, d;
  for (const auto& c : out.countries) {
    m.push_back(c.mcvi_pre);
    d.push_back(c.pct_change);
  }
  try {
    out.spearman = stats::spearman(m, d);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroVariance) throw;
  }
  out.q4_vs_q1 = stats::mann_whitney(groups[3], groups[0]);
  return out;
}

}  // namespace mcvi::analysis
