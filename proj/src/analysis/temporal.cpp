#include "mcvi/analysis/temporal.hpp"

#include <algorithm>
#include <map>

#include "mcvi/error.hpp"
#include "mcvi/stats/ranks.hpp"

namespace mcvi::analysis {

namespace {

YearPairCorrelation correlate(const std::map<EconomyId, double>& a, const std::map<EconomyId, double>& b) {
  YearPairCorrelation out;
  std::vector<double> xs, ys;
  for (const auto& [economy, v] : a) {
    const auto it = b.find(economy);
    if (it == b.end()) continue;
    xs.push_back(v);
    ys.push_back(it->second);
  }
  out.shared = xs.size();
  try {
    out.corr = stats::spearman(xs, ys);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InsufficientData && e.kind() != ErrorKind::ZeroVariance) throw;
  }
  return out;
}

std::map<EconomyId, double> means_over(const std::map<int, std::map<EconomyId, double>>& by_year, int lo, int hi) {
  std::map<EconomyId, std::pair<double, int>> acc;
  for (const auto& [year, scores] : by_year) {
    if (year < lo || year > hi) continue;
    for (const auto& [economy, v] : scores) {
      acc[economy].first += v;
      acc[economy].second += 1;
    }
  }
  std::map<EconomyId, double> out;
  for (const auto& [economy, s] : acc) out.emplace(economy, s.first / s.second);
  return out;
}

}  // namespace

TrendReport temporal_report(const IndexPanel& index, const ClassificationTable& cls) {
  std::map<int, std::map<EconomyId, double>> by_year;
  std::map<EconomyId, std::vector<double>> by_country;
  for (const auto& r : index.rows) {
    by_year[r.year][r.economy] = r.mcvi;
    by_country[r.economy].push_back(r.mcvi);
  }
  if (by_year.size() < 2) throw Error(ErrorKind::InsufficientYears, "temporal analysis needs at least two years");

  std::map<EconomyId, bool> sids;
  for (const auto& [economy, _] : by_country) {
    const auto* c = cls.find(economy);
    if (!c) throw Error(ErrorKind::UnknownEconomy, "economy missing from classifications", economy);
    sids.emplace(economy, c->sids);
  }

  TrendReport out;
  std::vector<double> years, means;
  for (const auto& [year, scores] : by_year) {
    AnnualMean a;
    a.year = year;
    a.n = scores.size();
    std::vector<double> all, in, out_group;
    for (const auto& [economy, v] : scores) {
      all.push_back(v);
      (sids.at(economy) ? in : out_group).push_back(v);
    }
    a.mean = stats::mean(all);
    std::sort(all.begin(), all.end());
    a.q25 = stats::quantile_sorted(all, 0.25);
    a.q75 = stats::quantile_sorted(all, 0.75);
    if (!in.empty()) a.sids_mean = stats::mean(in);
    if (!out_group.empty()) a.non_sids_mean = stats::mean(out_group);
    if (a.sids_mean && a.non_sids_mean) a.gap = *a.sids_mean - *a.non_sids_mean;
    years.push_back(year);
    means.push_back(a.mean);
    out.annual.push_back(a);
  }
  out.trend = stats::linear_trend(years, means);
  out.pct_change = means.front() != 0.0 ? 100.0 * (means.back() - means.front()) / means.front() : 0.0;
  out.first_gap = out.annual.front().gap;
  out.last_gap = out.annual.back().gap;

  for (auto it = by_year.begin(); std::next(it) != by_year.end(); ++it) {
    const auto nx = std::next(it);
    auto c = correlate(it->second, nx->second);
    c.year_a = it->first;
    c.year_b = nx->first;
    out.consecutive.push_back(c);
  }

  const int first = by_year.begin()->first;
  const int last = by_year.rbegin()->first;
  out.split_first_end = first + (last - first + 1) / 2 - 1;
  out.split_half = correlate(means_over(by_year, first, out.split_first_end), means_over(by_year, out.split_first_end + 1, last));
  out.split_half.year_a = first;
  out.split_half.year_b = last;
  out.first_last = correlate(by_year.begin()->second, by_year.rbegin()->second);
  out.first_last.year_a = first;
  out.first_last.year_b = last;

  for (const auto& [economy, values] : by_country) {
    Volatility v;
    v.economy = economy;
    v.sd = stats::sample_sd(values);
    v.years = static_cast<int>(values.size());
    v.ranked = v.years >= kVolatilityMinYears;
    out.volatility.push_back(std::move(v));
  }
  std::sort(out.volatility.begin(), out.volatility.end(), [](const Volatility& a, const Volatility& b) {
    if (a.ranked != b.ranked) return a.ranked;
    if (a.sd != b.sd) return a.sd > b.sd;
    return a.economy < b.economy;
  });
  return out;
}

}  // namespace mcvi::analysis
