#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcvi/index.hpp"
#include "mcvi/stats/correlation.hpp"
#include "mcvi/stats/nonparametric.hpp"

namespace mcvi::analysis {

struct EventSpec {
  std::string name;
  int pre_year = 0;
  int crisis_year = 0;
};

/// COVID-19 (2019 -> 2020), financial crisis (2008 -> 2009), Red Sea (2023 -> 2024).
std::vector<EventSpec> default_events();

struct EventCountry {
  EconomyId economy;
  double mcvi_pre = 0.0;
  double pct_change = 0.0;  // 100 (crisis - pre) / pre trade openness
  int quartile = 0;         // 1 = least vulnerable
};

struct EventReport {
  EventSpec spec;
  std::size_t n = 0;
  std::array<std::size_t, 4> quartile_n{};
  std::array<double, 4> quartile_mean{};
  std::optional<stats::Correlation> spearman;  // missing when every change is equal
  stats::MannWhitney q4_vs_q1;
  std::vector<EventCountry> countries;  // ascending pre-crisis MCVI, ties by code
};

/// Countries with pre-crisis MCVI and trade openness in both years are sorted
/// by MCVI (ties by code) and cut into quartiles by position; with n = 4q + r
/// the first r quartiles take q + 1 countries. Throws InvalidConfig for a
/// spec with pre_year >= crisis_year and InsufficientData below 8 countries.
EventReport event_study(const IndexPanel& index, const ExternalTable& ext, const EventSpec& spec);

}  // namespace mcvi::analysis
