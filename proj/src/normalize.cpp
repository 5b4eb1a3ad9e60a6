#include "mcvi/normalize.hpp"

#include <algorithm>
#include <map>

#include "mcvi/error.hpp"
#include "mcvi/stats/ranks.hpp"

namespace mcvi {

std::string_view to_string(NormalizationMethod m) noexcept {
  switch (m) {
    case NormalizationMethod::PooledRank: return "pooled-rank";
    case NormalizationMethod::WithinYearRank: return "within-year";
    case NormalizationMethod::PooledMinMax: return "minmax";
  }
  return "pooled-rank";
}

std::optional<NormalizationMethod> parse_normalization(std::string_view s) noexcept {
  for (auto m : {NormalizationMethod::PooledRank, NormalizationMethod::WithinYearRank,
                 NormalizationMethod::PooledMinMax}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

namespace {

/// Fractional ranks of the present entries listed in `members`.
void rank_subset(std::span<const std::optional<double>> values, std::span<const std::size_t> members,
                 Direction direction, Column& out) {
  std::vector<double> oriented;
  oriented.reserve(members.size());
  for (auto i : members) oriented.push_back(direction == Direction::HigherIsVulnerable ? *values[i] : -*values[i]);
  const auto ranks = stats::average_ranks(oriented);
  const auto n = static_cast<double>(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) out[members[k]] = ranks[k] / n;
}

}  // namespace

Column pooled_fractional_rank(std::span<const std::optional<double>> values, Direction direction) {
  std::vector<std::size_t> present;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) present.push_back(i);
  }
  if (present.empty()) throw Error(ErrorKind::AllMissing, "column has no values to rank");
  Column out(values.size());
  rank_subset(values, present, direction, out);
  return out;
}

Column within_year_rank(std::span<const std::optional<double>> values, std::span<const int> years,
                        Direction direction) {
  if (values.size() != years.size()) throw Error(ErrorKind::InvalidConfig, "values and years differ in length");
  std::map<int, std::vector<std::size_t>> by_year;
  bool any = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) {
      by_year[years[i]].push_back(i);
      any = true;
    }
  }
  if (!any) throw Error(ErrorKind::AllMissing, "column has no values to rank");
  Column out(values.size());
  for (const auto& [year, members] : by_year) rank_subset(values, members, direction, out);
  return out;
}

Column pooled_minmax(std::span<const std::optional<double>> values, Direction direction) {
  std::optional<double> lo;
  std::optional<double> hi;
  for (const auto& v : values) {
    if (!v) continue;
    lo = lo ? std::min(*lo, *v) : *v;
    hi = hi ? std::max(*hi, *v) : *v;
  }
  if (!lo) throw Error(ErrorKind::AllMissing, "column has no values to scale");
  if (!(*hi > *lo)) throw Error(ErrorKind::ConstantColumn, "min-max scaling of a constant column");
  Column out(values.size());
  const double range = *hi - *lo;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) continue;
    const double v = (*values[i] - *lo) / range;
    out[i] = direction == Direction::HigherIsVulnerable ? v : 1.0 - v;
  }
  return out;
}

NormalizedPanel normalize_panel(const RawDimensionPanel& raw, NormalizationMethod method) {
  if (raw.rows.empty()) throw Error(ErrorKind::AllMissing, "raw panel is empty");
  const std::size_t n = raw.rows.size();
  Column lsci(n), mean_lsbci(n), partners(n), hhi(n);
  std::vector<int> years(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = raw.rows[i];
    lsci[i] = r.lsci;
    mean_lsbci[i] = r.mean_lsbci;
    if (r.has_bilateral()) partners[i] = r.partner_count;
    hhi[i] = r.port_hhi;
    years[i] = r.year;
  }

  auto apply = [&](const Column& c, Direction d) -> Column {
    switch (method) {
      case NormalizationMethod::PooledRank: return pooled_fractional_rank(c, d);
      case NormalizationMethod::WithinYearRank: return within_year_rank(c, years, d);
      case NormalizationMethod::PooledMinMax: return pooled_minmax(c, d);
    }
    return {};
  };
  const auto d1 = apply(lsci, Direction::LowerIsVulnerable);
  const auto d2a = apply(mean_lsbci, Direction::LowerIsVulnerable);
  const auto d2b = apply(partners, Direction::LowerIsVulnerable);
  const auto d3 = apply(hhi, Direction::HigherIsVulnerable);

  NormalizedPanel out;
  out.method = method;
  out.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    NormalizedRow row;
    row.economy = raw.rows[i].economy;
    row.year = raw.rows[i].year;
    row.d1 = d1[i];
    row.d2a = d2a[i];
    row.d2b = d2b[i];
    if (row.d2a && row.d2b) row.d2 = 0.5 * (*row.d2a + *row.d2b);
    row.d3 = d3[i];
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace mcvi
