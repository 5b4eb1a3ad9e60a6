#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mcvi/dimensions.hpp"

namespace mcvi {

enum class Direction { LowerIsVulnerable, HigherIsVulnerable };

enum class NormalizationMethod { PooledRank, WithinYearRank, PooledMinMax };

std::string_view to_string(NormalizationMethod m) noexcept;
std::optional<NormalizationMethod> parse_normalization(std::string_view s) noexcept;

using Column = std::vector<std::optional<double>>;

/// Average rank of the oriented value divided by N, where N counts only the
/// non-missing entries. LowerIsVulnerable negates before ranking, so the
/// smallest raw value maps to 1. Throws AllMissing.
Column pooled_fractional_rank(std::span<const std::optional<double>> values, Direction direction);

/// Fractional ranks computed separately inside each year (`years[i]` is the
/// year of `values[i]`). A year with no data stays missing; only a fully
/// missing column throws AllMissing.
Column within_year_rank(std::span<const std::optional<double>> values, std::span<const int> years,
                        Direction direction);

/// (x - min) / (max - min), flipped to 1 - v when LowerIsVulnerable.
/// Throws ConstantColumn when max == min, AllMissing when empty.
Column pooled_minmax(std::span<const std::optional<double>> values, Direction direction);

struct NormalizedRow {
  EconomyId economy;
  int year = 0;
  std::optional<double> d1;
  std::optional<double> d2a;
  std::optional<double> d2b;
  std::optional<double> d2;  // (d2a + d2b) / 2 when both exist
  std::optional<double> d3;

  bool complete() const noexcept { return d1 && d2a && d2b && d3; }
};

struct NormalizedPanel {
  std::vector<NormalizedRow> rows;  // same order as the raw panel
  NormalizationMethod method = NormalizationMethod::PooledRank;
};

/// Applies `method` to every sub-indicator with its direction:
///   d1  <- lsci           LowerIsVulnerable
///   d2a <- mean_lsbci     LowerIsVulnerable
///   d2b <- partner_count  LowerIsVulnerable (missing without bilateral data)
///   d3  <- port_hhi       HigherIsVulnerable
NormalizedPanel normalize_panel(const RawDimensionPanel& raw, NormalizationMethod method);

}  // namespace mcvi
