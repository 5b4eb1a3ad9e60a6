#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcvi/index.hpp"

namespace mcvi::analysis {

struct GroupStat {
  std::string partition;  // "sids", "ldc", "lldc" or "region"
  std::string group;      // e.g. "SIDS", "non-SIDS", "Oceania"
  std::size_t n_obs = 0;
  std::size_t n_countries = 0;
  std::optional<double> mean;  // missing for an empty group
  std::optional<double> sd;    // sample SD; missing below two units
};

struct GroupGap {
  std::string partition;
  std::string group_a;
  std::string group_b;
  std::optional<double> gap;  // mean(a) - mean(b)
};

struct GroupReport {
  std::vector<GroupStat> groups;
  std::vector<GroupGap> gaps;
  bool country_weighted = false;

  const GroupStat* find(std::string_view partition, std::string_view group) const;
  std::optional<double> gap(std::string_view partition, std::string_view a, std::string_view b) const;
};

/// MCVI by classification. Observation-weighted by default (each
/// country-year counts once); with `country_weighted` each country's time
/// mean counts once instead. Throws EmptyIndex and UnknownEconomy.
GroupReport group_statistics(const IndexPanel& index, const ClassificationTable& cls, bool country_weighted = false);

}  // namespace mcvi::analysis
