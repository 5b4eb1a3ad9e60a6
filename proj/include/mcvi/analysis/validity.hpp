#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcvi/index.hpp"
#include "mcvi/stats/correlation.hpp"
#include "mcvi/stats/regression.hpp"

namespace mcvi::analysis {

struct ValidityRow {
  std::string indicator;  // "lpi" or "freight"
  int year = 0;
  std::size_t n = 0;
  std::optional<stats::Correlation> corr;
  bool skipped = false;  // InsufficientOverlap: fewer than 3 matches, or a constant side
};

struct ValidityReport {
  std::vector<ValidityRow> rows;  // lpi years then freight years, ascending
  std::optional<double> mean_rho_lpi;
  std::optional<double> mean_rho_freight;
};

/// Spearman between MCVI and each external indicator, one row for every year
/// in which the indicator is reported at all.
ValidityReport convergent_validity(const IndexPanel& index, const ExternalTable& ext);

struct RegressionSuite {
  stats::RegressionResult model1;  // mcvi ~ log gdp_pc
  stats::RegressionResult model2;  // mcvi ~ log trade_open
  stats::RegressionResult model3;  // mcvi ~ both logs + sids + ldc
  std::vector<std::string> model3_dropped;  // dummies constant in the sample
  std::optional<stats::RegressionResult> fe;
  std::optional<stats::RegressionResult> re;
  std::optional<stats::HausmanResult> hausman;
  std::vector<std::string> panel_regressors;  // Model 3 slopes that survive demeaning
  std::string panel_note;  // why FE/RE/Hausman are absent, when they are
  std::size_t n_matched = 0;
  std::size_t n_dropped_nonpositive = 0;
};

/// Models 1-3 on one common sample (index rows with positive gdp_pc and
/// trade_open), pooled with country-clustered errors; then FE and RE on the
/// Model 3 regressors with within variation, and the Hausman test. Panel
/// fits that cannot be estimated are reported through `panel_note`.
/// Throws InsufficientData when nothing matches.
RegressionSuite run_regressions(const IndexPanel& index, const ExternalTable& ext, const ClassificationTable& cls);

}  // namespace mcvi::analysis
