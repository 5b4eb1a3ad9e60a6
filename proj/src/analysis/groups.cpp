#include "mcvi/analysis/groups.hpp"

#include <functional>
#include <map>

#include "mcvi/error.hpp"
#include "mcvi/stats/ranks.hpp"

namespace mcvi::analysis {

const GroupStat* GroupReport::find(std::string_view partition, std::string_view group) const {
  for (const auto& g : groups) {
    if (g.partition == partition && g.group == group) return &g;
  }
  return nullptr;
}

std::optional<double> GroupReport::gap(std::string_view partition, std::string_view a, std::string_view b) const {
  for (const auto& g : gaps) {
    if (g.partition == partition && g.group_a == a && g.group_b == b) return g.gap;
  }
  return std::nullopt;
}

namespace {

struct Partition {
  std::string name;
  std::vector<std::string> groups;
  std::function<std::string(const Classification&)> label;
};

std::vector<Partition> partitions() {
  auto flag = [](bool v, const char* yes, const char* no) { return std::string(v ? yes : no); };
  std::vector<Partition> out;
  out.push_back({"sids", {"SIDS", "non-SIDS"}, [=](const Classification& c) { return flag(c.sids, "SIDS", "non-SIDS"); }});
  out.push_back({"ldc", {"LDC", "non-LDC"}, [=](const Classification& c) { return flag(c.ldc, "LDC", "non-LDC"); }});
  out.push_back({"lldc", {"LLDC", "non-LLDC"}, [=](const Classification& c) { return flag(c.lldc, "LLDC", "non-LLDC"); }});
  std::vector<std::string> regions;
  for (auto r : {Region::Africa, Region::Americas, Region::Asia, Region::Europe, Region::Oceania}) {
    regions.emplace_back(to_string(r));
  }
  out.push_back({"region", regions, [](const Classification& c) { return std::string(to_string(c.region)); }});
  return out;
}

}  // namespace

GroupReport group_statistics(const IndexPanel& index, const ClassificationTable& cls, bool country_weighted) {
  if (index.rows.empty()) throw Error(ErrorKind::EmptyIndex, "index panel has no complete observations");

  // Per-country observations, in code order.
  std::map<EconomyId, std::vector<double>> by_country;
  for (const auto& r : index.rows) by_country[r.economy].push_back(r.mcvi);
  std::map<EconomyId, const Classification*> lookup;
  for (const auto& [economy, _] : by_country) {
    const auto* c = cls.find(economy);
    if (!c) throw Error(ErrorKind::UnknownEconomy, "economy missing from classifications", economy);
    lookup.emplace(economy, c);
  }

  GroupReport out;
  out.country_weighted = country_weighted;
  for (const auto& p : partitions()) {
    std::map<std::string, std::vector<double>> units;
    std::map<std::string, std::pair<std::size_t, std::size_t>> counts;  // obs, countries
    for (const auto& [economy, values] : by_country) {
      const std::string g = p.label(*lookup.at(economy));
      auto& u = units[g];
      if (country_weighted) {
        u.push_back(stats::mean(values));
      } else {
        u.insert(u.end(), values.begin(), values.end());
      }
      counts[g].first += values.size();
      counts[g].second += 1;
    }
    for (const auto& g : p.groups) {
      GroupStat s;
      s.partition = p.name;
      s.group = g;
      const auto it = units.find(g);
      if (it != units.end() && !it->second.empty()) {
        s.n_obs = counts[g].first;
        s.n_countries = counts[g].second;
        s.mean = stats::mean(it->second);
        if (it->second.size() >= 2) s.sd = stats::sample_sd(it->second);
      }
      out.groups.push_back(std::move(s));
    }
    for (std::size_t a = 0; a < p.groups.size(); ++a) {
      for (std::size_t b = a + 1; b < p.groups.size(); ++b) {
        GroupGap gap{p.name, p.groups[a], p.groups[b], std::nullopt};
        const auto* ga = out.find(p.name, p.groups[a]);
        const auto* gb = out.find(p.name, p.groups[b]);
        if (ga->mean && gb->mean) gap.gap = *ga->mean - *gb->mean;
        out.gaps.push_back(std::move(gap));
      }
    }
  }
  return out;
}

}  // namespace mcvi::analysis
