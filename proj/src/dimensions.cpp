#include "mcvi/dimensions.hpp"

#include <map>
#include <set>

#include "mcvi/error.hpp"

namespace mcvi {

double mean_bilateral(std::span<const double> pair_values) {
  if (pair_values.empty()) throw Error(ErrorKind::EmptyPartnerSet, "no bilateral partners");
  double sum = 0.0;
  for (double v : pair_values) sum += v;
  return sum / static_cast<double>(pair_values.size());
}

std::size_t partner_count(std::span<const LsbciRow> pairs, std::string_view economy, int year) {
  std::set<std::string_view> partners;
  for (const auto& r : pairs) {
    if (r.year != year) continue;
    if (r.economy_a == economy) partners.insert(r.economy_b);
    if (r.economy_b == economy) partners.insert(r.economy_a);
  }
  return partners.size();
}

double port_hhi(std::span<const double> port_scores) {
  double total = 0.0;
  for (double p : port_scores) {
    if (p > 0.0) total += p;
  }
  if (!(total > 0.0)) throw Error(ErrorKind::NoActivePorts, "no port with a positive score");
  double hhi = 0.0;
  for (double p : port_scores) {
    if (p > 0.0) {
      const double share = p / total;
      hhi += share * share;
    }
  }
  return hhi;
}

RawDimensionPanel build_raw_panel(const DataBundle& bundle) {
  struct Accum {
    std::optional<double> lsci;
    std::vector<double> bilateral;
    std::vector<double> ports;
    bool has_ports = false;
  };
  std::map<std::pair<EconomyId, int>, Accum> cells;

  for (const auto& r : bundle.lsci().rows) cells[{r.economy, r.year}].lsci = r.lsci;
  // Pair rows are unique per unordered pair, so each partner is counted once.
  for (const auto& r : bundle.lsbci().rows) {
    cells[{r.economy_a, r.year}].bilateral.push_back(r.lsbci);
    cells[{r.economy_b, r.year}].bilateral.push_back(r.lsbci);
  }
  for (const auto& r : bundle.plsci().rows) {
    auto& c = cells[{r.economy, r.year}];
    c.has_ports = true;
    c.ports.push_back(r.plsci);
  }

  RawDimensionPanel panel;
  panel.rows.reserve(cells.size());
  for (auto& [key, c] : cells) {
    RawDimensionRow row;
    row.economy = key.first;
    row.year = key.second;
    row.lsci = c.lsci;
    if (!c.bilateral.empty()) {
      row.mean_lsbci = mean_bilateral(c.bilateral);
      row.partner_count = static_cast<double>(c.bilateral.size());
    }
    if (c.has_ports) {
      bool any_positive = false;
      for (double p : c.ports) any_positive = any_positive || p > 0.0;
      if (any_positive) row.port_hhi = port_hhi(c.ports);
    }
    panel.rows.push_back(std::move(row));
  }
  return panel;
}

}  // namespace mcvi
