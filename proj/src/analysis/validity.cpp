#include "mcvi/analysis/validity.hpp"

#include <cmath>
#include <map>
#include <set>

#include "mcvi/error.hpp"

namespace mcvi::analysis {

namespace {

template <typename Field>
void validity_rows(const IndexPanel& index, const ExternalTable& ext, const std::string& name, Field field,
                   ValidityReport& out, std::optional<double>& mean_rho) {
  std::set<int> years;
  for (const auto& r : ext.rows) {
    if (field(r)) years.insert(r.year);
  }
  std::map<std::pair<EconomyId, int>, double> scores;
  for (const auto& r : index.rows) scores.emplace(std::make_pair(r.economy, r.year), r.mcvi);

  double sum = 0.0;
  int used = 0;
  for (int year : years) {
    ValidityRow row;
    row.indicator = name;
    row.year = year;
    std::vector<double> m, v;
    for (const auto& r : ext.rows) {
      if (r.year != year || !field(r)) continue;
      const auto it = scores.find({r.economy, year});
      if (it == scores.end()) continue;
      m.push_back(it->second);
      v.push_back(*field(r));
    }
    row.n = m.size();
    try {
      row.corr = stats::spearman(m, v);
      sum += row.corr->rho;
      ++used;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InsufficientData && e.kind() != ErrorKind::ZeroVariance) throw;
      row.skipped = true;
    }
    out.rows.push_back(std::move(row));
  }
  if (used > 0) mean_rho = sum / used;
}

struct Sample {
  std::vector<double> y, log_gdp, log_trade, sids, ldc;
  std::vector<std::string> country;
};

stats::Design design(const Sample& s, const std::vector<std::pair<std::string, const std::vector<double>*>>& cols,
                     bool intercept) {
  stats::Design d;
  const auto n = static_cast<Eigen::Index>(s.y.size());
  const auto k = static_cast<Eigen::Index>(cols.size()) + (intercept ? 1 : 0);
  d.x.resize(n, k);
  Eigen::Index j = 0;
  if (intercept) {
    d.names.push_back("const");
    d.x.col(j++).setOnes();
  }
  for (const auto& [name, values] : cols) {
    d.names.push_back(name);
    for (Eigen::Index i = 0; i < n; ++i) d.x(i, j) = (*values)[static_cast<std::size_t>(i)];
    ++j;
  }
  return d;
}

bool constant(const std::vector<double>& v) {
  for (double x : v) {
    if (x != v.front()) return false;
  }
  return true;
}

bool varies_within(const std::vector<double>& v, const std::vector<std::string>& entity) {
  std::map<std::string_view, double> first;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto [it, fresh] = first.emplace(entity[i], v[i]);
    if (!fresh && it->second != v[i]) return true;
  }
  return false;
}

}  // namespace

ValidityReport convergent_validity(const IndexPanel& index, const ExternalTable& ext) {
  ValidityReport out;
  validity_rows(index, ext, "lpi", [](const ExternalRow& r) { return r.lpi; }, out, out.mean_rho_lpi);
  validity_rows(index, ext, "freight", [](const ExternalRow& r) { return r.freight_advalorem; }, out,
                out.mean_rho_freight);
  return out;
}

RegressionSuite run_regressions(const IndexPanel& index, const ExternalTable& ext, const ClassificationTable& cls) {
  RegressionSuite out;
  Sample s;
  for (const auto& r : index.rows) {
    const auto* e = ext.find(r.economy, r.year);
    if (!e || !e->gdp_pc || !e->trade_open) continue;
    if (!(*e->gdp_pc > 0.0) || !(*e->trade_open > 0.0)) {
      ++out.n_dropped_nonpositive;
      continue;
    }
    const auto* c = cls.find(r.economy);
    if (!c) throw Error(ErrorKind::UnknownEconomy, "economy missing from classifications", r.economy);
    s.y.push_back(r.mcvi);
    s.log_gdp.push_back(std::log(*e->gdp_pc));
    s.log_trade.push_back(std::log(*e->trade_open));
    s.sids.push_back(c->sids ? 1.0 : 0.0);
    s.ldc.push_back(c->ldc ? 1.0 : 0.0);
    s.country.push_back(r.economy);
  }
  out.n_matched = s.y.size();
  if (s.y.empty()) throw Error(ErrorKind::InsufficientData, "no index rows match gdp_pc and trade_open");

  out.model1 = stats::ols_clustered(s.y, design(s, {{"log_gdp_pc", &s.log_gdp}}, true), s.country);
  out.model2 = stats::ols_clustered(s.y, design(s, {{"log_trade_open", &s.log_trade}}, true), s.country);

  std::vector<std::pair<std::string, const std::vector<double>*>> m3 = {{"log_gdp_pc", &s.log_gdp},
                                                                        {"log_trade_open", &s.log_trade}};
  for (const auto& [name, col] : {std::pair{std::string("sids"), &s.sids}, std::pair{std::string("ldc"), &s.ldc}}) {
    if (constant(*col)) {
      out.model3_dropped.push_back(name);
    } else {
      m3.emplace_back(name, col);
    }
  }
  out.model3 = stats::ols_clustered(s.y, design(s, m3, true), s.country);

  std::vector<std::pair<std::string, const std::vector<double>*>> panel;
  for (const auto& c : m3) {
    if (varies_within(*c.second, s.country)) {
      panel.push_back(c);
      out.panel_regressors.push_back(c.first);
    }
  }
  if (panel.empty()) {
    out.panel_note = "no Model 3 regressor varies within countries";
    return out;
  }
  const auto slopes = design(s, panel, false);
  try {
    out.fe = stats::fixed_effects(s.y, slopes, s.country);
    out.re = stats::random_effects(s.y, slopes, s.country);
    out.hausman = stats::hausman(*out.fe, *out.re);
  } catch (const Error& e) {
    out.panel_note = e.what();
  }
  return out;
}

}  // namespace mcvi::analysis
