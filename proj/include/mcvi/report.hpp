#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcvi/analysis/decomposition.hpp"
#include "mcvi/analysis/events.hpp"
#include "mcvi/analysis/groups.hpp"
#include "mcvi/analysis/robustness.hpp"
#include "mcvi/analysis/temporal.hpp"
#include "mcvi/analysis/validity.hpp"
#include "mcvi/csv.hpp"
#include "mcvi/uncertainty.hpp"

namespace mcvi::report {

/// Output directory that remembers every file written through it.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);

  void csv(std::string_view name, const std::function<void(csv::Writer&)>& body);
  void json(std::string_view name, const nlohmann::ordered_json& value);
  void text(std::string_view name, std::string_view content);

  const std::filesystem::path& path() const noexcept { return dir_; }
  const std::vector<std::filesystem::path>& written() const noexcept { return written_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
};

struct EventOutcome {
  analysis::EventSpec spec;
  std::optional<analysis::EventReport> report;
  std::string skipped;  // reason when `report` is empty
};

/// index_panel.csv, country_ranking.csv
void emit_index(OutputDir& out, const IndexPanel& index, const CountryRanking& ranking);
void emit_ranking(OutputDir& out, const CountryRanking& ranking, std::string_view name);
/// descriptive_stats.csv, correlations.csv, pca.csv
void emit_descriptives(OutputDir& out, const NormalizedPanel& norm, const IndexPanel& index);
/// group_stats.csv, group_gaps.csv
void emit_groups(OutputDir& out, const analysis::GroupReport& groups);
/// annual_trend.csv, rank_stability.csv, volatility.csv, temporal.json
void emit_temporal(OutputDir& out, const analysis::TrendReport& trend);
/// appendix_scores.csv
void emit_appendix(OutputDir& out, const CountryRanking& ranking, const ClassificationTable& cls,
                   const analysis::TrendReport& trend, const analysis::DominantReport& dominant);
/// dominant_dimensions.csv, clusters.csv, cluster_summary.csv, cluster_selection.csv, decomposition.json
void emit_decomposition(OutputDir& out, const analysis::DominantReport& dominant, const analysis::ClusterReport& clusters);
/// robustness.csv
void emit_robustness(OutputDir& out, const analysis::RobustnessReport& report);
/// montecarlo.json, montecarlo_ranks.csv, montecarlo_sims.csv
void emit_montecarlo(OutputDir& out, const McResult& mc, const std::optional<VarianceShares>& shares,
                     std::string_view shares_note);
/// convergent_validity.csv, regressions.csv, regressions.json
void emit_validity(OutputDir& out, const analysis::ValidityReport& validity,
                   const std::optional<analysis::RegressionSuite>& regressions, std::string_view regressions_note);
/// events.csv, event_countries.csv, events.json
void emit_events(OutputDir& out, const std::vector<EventOutcome>& events);

nlohmann::ordered_json to_json(const stats::RegressionResult& r);

}  // namespace mcvi::report
