#include "mcvi/report.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "mcvi/error.hpp"
#include "mcvi/stats/pca.hpp"
#include "mcvi/stats/ranks.hpp"

namespace mcvi::report {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

OutputDir::OutputDir(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir_.string() + ": " + ec.message(), dir_.string());
}

void OutputDir::text(std::string_view name, std::string_view content) {
  const auto path = dir_ / name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + path.string(), path.string());
  f << content;
  if (!f) throw Error(ErrorKind::Io, "write failed for " + path.string(), path.string());
  written_.push_back(path);
}

void OutputDir::csv(std::string_view name, const std::function<void(csv::Writer&)>& body) {
  std::ostringstream s;
  csv::Writer w(s);
  body(w);
  text(name, s.str());
}

void OutputDir::json(std::string_view name, const ordered_json& value) { text(name, value.dump(2) + "\n"); }

namespace {

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json corr_json(const std::optional<stats::Correlation>& c) {
  if (!c) return nullptr;
  return {{"rho", c->rho}, {"p_value", c->p_value}, {"n", c->n}};
}

struct Summary {
  std::size_t n = 0;
  double mean = 0.0, sd = 0.0, min = 0.0, max = 0.0, median = 0.0;
};

Summary summarize(std::vector<double> v) {
  Summary s;
  s.n = v.size();
  if (v.empty()) return s;
  s.mean = stats::mean(v);
  s.sd = stats::sample_sd(v);
  std::sort(v.begin(), v.end());
  s.min = v.front();
  s.max = v.back();
  s.median = stats::quantile_sorted(v, 0.5);
  return s;
}

}  // namespace

ordered_json to_json(const stats::RegressionResult& r) {
  ordered_json j;
  j["model"] = std::string(stats::to_string(r.model));
  ordered_json coefs = ordered_json::array();
  for (std::size_t k = 0; k < r.names.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    coefs.push_back({{"name", r.names[k]}, {"coef", r.coef(i)}, {"se", r.se(i)}, {"t", r.t(i)}, {"p_value", r.p_value(i)}});
  }
  j["coefficients"] = coefs;
  j["r_squared"] = r.r_squared;
  j["n_obs"] = r.n_obs;
  j["n_clusters"] = r.n_clusters;
  j["dof"] = r.dof;
  if (r.model == stats::ModelKind::RandomEffects) {
    j["sigma2_e"] = r.sigma2_e;
    j["sigma2_u"] = r.sigma2_u;
    j["sigma2_u_floored"] = r.sigma2_u_floored;
  }
  return j;
}

void emit_index(OutputDir& out, const IndexPanel& index, const CountryRanking& ranking) {
  out.csv("index_panel.csv", [&](csv::Writer& w) {
    w.header({"economy", "year", "d1", "d2", "d3", "mcvi"});
    for (const auto& r : index.rows) w.cell(r.economy).cell(r.year).cell(r.d1).cell(r.d2).cell(r.d3).cell(r.mcvi).end_row();
  });
  emit_ranking(out, ranking, "country_ranking.csv");
}

void emit_ranking(OutputDir& out, const CountryRanking& ranking, std::string_view name) {
  out.csv(name, [&](csv::Writer& w) {
    w.header({"rank", "economy", "mean_mcvi", "mean_d1", "mean_d2", "mean_d3", "years_covered", "below_min_years"});
    for (const auto& r : ranking.rows) {
      w.cell(r.rank).cell(r.economy).cell(r.mean_mcvi).cell(r.mean_d1).cell(r.mean_d2).cell(r.mean_d3);
      w.cell(r.years_covered).cell(r.below_min_years).end_row();
    }
  });
}

void emit_descriptives(OutputDir& out, const NormalizedPanel& norm, const IndexPanel& index) {
  std::vector<double> d2a, d2b;
  for (const auto& r : norm.rows) {
    if (!r.complete()) continue;
    d2a.push_back(*r.d2a);
    d2b.push_back(*r.d2b);
  }
  std::vector<double> d1, d2, d3, m;
  for (const auto& r : index.rows) {
    d1.push_back(r.d1);
    d2.push_back(r.d2);
    d3.push_back(r.d3);
    m.push_back(r.mcvi);
  }
  out.csv("descriptive_stats.csv", [&](csv::Writer& w) {
    w.header({"variable", "n", "mean", "sd", "min", "median", "max"});
    const std::pair<const char*, const std::vector<double>*> cols[] = {
        {"d1", &d1}, {"d2a", &d2a}, {"d2b", &d2b}, {"d2", &d2}, {"d3", &d3}, {"mcvi", &m}};
    for (const auto& [name, v] : cols) {
      const auto s = summarize(*v);
      w.cell(name).cell(s.n).cell(s.mean).cell(s.sd).cell(s.min).cell(s.median).cell(s.max).end_row();
    }
  });

  const std::pair<const char*, const std::vector<double>*> vars[] = {{"d1", &d1}, {"d2", &d2}, {"d3", &d3}, {"mcvi", &m}};
  out.csv("correlations.csv", [&](csv::Writer& w) {
    w.header({"a", "b", "pearson", "spearman", "n"});
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        std::optional<double> p, s;
        try {
          p = stats::pearson(*vars[i].second, *vars[j].second).rho;
          s = stats::spearman(*vars[i].second, *vars[j].second).rho;
        } catch (const Error&) {
        }
        w.cell(vars[i].first).cell(vars[j].first).cell(p).cell(s).cell(vars[i].second->size()).end_row();
      }
    }
  });

  Eigen::MatrixXd data(static_cast<Eigen::Index>(d1.size()), 3);
  for (std::size_t i = 0; i < d1.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    data(r, 0) = d1[i];
    data(r, 1) = d2[i];
    data(r, 2) = d3[i];
  }
  out.csv("pca.csv", [&](csv::Writer& w) {
    w.header({"component", "eigenvalue", "explained_share", "loading_d1", "loading_d2", "loading_d3"});
    try {
      const auto p = stats::pca(data, stats::PcaMode::Correlation);
      for (Eigen::Index c = 0; c < 3; ++c) {
        w.cell("PC" + std::to_string(c + 1)).cell(p.eigenvalues(c)).cell(p.explained_shares(c));
        w.cell(p.loadings(0, c)).cell(p.loadings(1, c)).cell(p.loadings(2, c)).end_row();
      }
    } catch (const Error&) {
      // Degenerate panels leave the table with its header only.
    }
  });
}

void emit_groups(OutputDir& out, const analysis::GroupReport& groups) {
  out.csv("group_stats.csv", [&](csv::Writer& w) {
    w.header({"partition", "group", "n_obs", "n_countries", "mean", "sd", "weighting"});
    for (const auto& g : groups.groups) {
      w.cell(g.partition).cell(g.group).cell(g.n_obs).cell(g.n_countries).cell(g.mean).cell(g.sd);
      w.cell(groups.country_weighted ? "country" : "observation").end_row();
    }
  });
  out.csv("group_gaps.csv", [&](csv::Writer& w) {
    w.header({"partition", "group_a", "group_b", "gap"});
    for (const auto& g : groups.gaps) w.cell(g.partition).cell(g.group_a).cell(g.group_b).cell(g.gap).end_row();
  });
}

void emit_temporal(OutputDir& out, const analysis::TrendReport& t) {
  out.csv("annual_trend.csv", [&](csv::Writer& w) {
    w.header({"year", "n", "mean", "q25", "q75", "sids_mean", "non_sids_mean", "sids_gap"});
    for (const auto& a : t.annual) {
      w.cell(a.year).cell(a.n).cell(a.mean).cell(a.q25).cell(a.q75).cell(a.sids_mean).cell(a.non_sids_mean).cell(a.gap);
      w.end_row();
    }
  });
  auto pair_row = [](csv::Writer& w, const char* kind, const analysis::YearPairCorrelation& c) {
    w.cell(kind).cell(c.year_a).cell(c.year_b).cell(c.shared);
    w.cell(c.corr ? std::optional<double>(c.corr->rho) : std::nullopt);
    w.cell(c.corr ? std::optional<double>(c.corr->p_value) : std::nullopt).end_row();
  };
  out.csv("rank_stability.csv", [&](csv::Writer& w) {
    w.header({"kind", "year_a", "year_b", "n", "rho", "p_value"});
    for (const auto& c : t.consecutive) pair_row(w, "consecutive", c);
    pair_row(w, "split-half", t.split_half);
    pair_row(w, "first-last", t.first_last);
  });
  out.csv("volatility.csv", [&](csv::Writer& w) {
    w.header({"economy", "sd", "years", "ranked"});
    for (const auto& v : t.volatility) w.cell(v.economy).cell(v.sd).cell(v.years).cell(v.ranked).end_row();
  });

  ordered_json j;
  j["trend"] = {{"slope", t.trend.slope}, {"intercept", t.trend.intercept}, {"r_squared", t.trend.r_squared}, {"n", t.trend.n}};
  j["pct_change_first_last"] = t.pct_change;
  j["sids_gap_first"] = opt(t.first_gap);
  j["sids_gap_last"] = opt(t.last_gap);
  std::optional<double> lo, hi;
  for (const auto& c : t.consecutive) {
    if (!c.corr) continue;
    lo = lo ? std::min(*lo, c.corr->rho) : c.corr->rho;
    hi = hi ? std::max(*hi, c.corr->rho) : c.corr->rho;
  }
  j["consecutive_rho_min"] = opt(lo);
  j["consecutive_rho_max"] = opt(hi);
  j["split_half"] = {{"first_half_end", t.split_first_end}, {"correlation", corr_json(t.split_half.corr)}};
  j["first_last"] = corr_json(t.first_last.corr);
  j["volatility_min_years"] = analysis::kVolatilityMinYears;
  out.json("temporal.json", j);
}

void emit_appendix(OutputDir& out, const CountryRanking& ranking, const ClassificationTable& cls,
                   const analysis::TrendReport& trend, const analysis::DominantReport& dominant) {
  std::map<std::string_view, const analysis::Volatility*> vol;
  for (const auto& v : trend.volatility) vol.emplace(v.economy, &v);
  std::map<std::string_view, const analysis::DominantDimension*> dom;
  for (const auto& d : dominant.countries) dom.emplace(d.economy, &d);
  out.csv("appendix_scores.csv", [&](csv::Writer& w) {
    w.header({"rank", "economy", "name", "region", "sids", "ldc", "lldc", "mean_mcvi", "mean_d1", "mean_d2", "mean_d3",
              "dominant", "volatility", "years_covered"});
    for (const auto& r : ranking.rows) {
      const auto* c = cls.find(r.economy);
      w.cell(r.rank).cell(r.economy).cell(c ? c->name : "").cell(c ? std::string(to_string(c->region)) : "");
      w.cell(c && c->sids).cell(c && c->ldc).cell(c && c->lldc);
      w.cell(r.mean_mcvi).cell(r.mean_d1).cell(r.mean_d2).cell(r.mean_d3);
      const auto d = dom.find(r.economy);
      w.cell(d != dom.end() ? std::string(analysis::to_string(d->second->dimension)) : "");
      const auto v = vol.find(r.economy);
      w.cell(v != vol.end() ? std::optional<double>(v->second->sd) : std::nullopt);
      w.cell(r.years_covered).end_row();
    }
  });
}

void emit_decomposition(OutputDir& out, const analysis::DominantReport& dominant, const analysis::ClusterReport& clusters) {
  out.csv("dominant_dimensions.csv", [&](csv::Writer& w) {
    w.header({"economy", "dominant", "tie"});
    for (const auto& d : dominant.countries) w.cell(d.economy).cell(std::string(analysis::to_string(d.dimension))).cell(d.tie).end_row();
  });
  out.csv("clusters.csv", [&](csv::Writer& w) {
    w.header({"economy", "cluster", "z_d1", "z_d2", "z_d3"});
    for (std::size_t i = 0; i < clusters.economies.size(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      w.cell(clusters.economies[i]).cell(clusters.labels[i]);
      w.cell(clusters.standardized(r, 0)).cell(clusters.standardized(r, 1)).cell(clusters.standardized(r, 2)).end_row();
    }
  });
  out.csv("cluster_summary.csv", [&](csv::Writer& w) {
    w.header({"cluster", "size", "mean_mcvi", "mean_d1", "mean_d2", "mean_d3"});
    for (const auto& c : clusters.clusters) {
      w.cell(c.cluster).cell(c.size).cell(c.mean_mcvi).cell(c.mean_d1).cell(c.mean_d2).cell(c.mean_d3).end_row();
    }
  });
  out.csv("cluster_selection.csv", [&](csv::Writer& w) {
    w.header({"k", "silhouette", "inertia", "selected"});
    for (const auto& c : clusters.candidates) w.cell(c.k).cell(c.silhouette).cell(c.inertia).cell(c.k == clusters.k).end_row();
  });
  ordered_json j;
  j["dominant_counts"] = {{"D1", dominant.count_d1}, {"D2", dominant.count_d2}, {"D3", dominant.count_d3}};
  j["dominant_ties"] = dominant.ties;
  j["k"] = clusters.k;
  j["silhouette"] = clusters.silhouette;
  j["degenerate"] = clusters.degenerate;
  ordered_json sizes = ordered_json::array();
  for (const auto& c : clusters.clusters) sizes.push_back({{"cluster", c.cluster}, {"size", c.size}, {"mean_mcvi", c.mean_mcvi}});
  j["clusters"] = sizes;
  out.json("decomposition.json", j);
}

void emit_robustness(OutputDir& out, const analysis::RobustnessReport& report) {
  out.csv("robustness.csv", [&](csv::Writer& w) {
    w.header({"specification", "w1", "w2", "w3", "method", "rho", "n"});
    for (const auto& r : report.rows) {
      w.cell(r.specification).cell(r.weights.w1).cell(r.weights.w2).cell(r.weights.w3);
      w.cell(std::string(to_string(r.method))).cell(r.rho).cell(r.n).end_row();
    }
  });
}

void emit_montecarlo(OutputDir& out, const McResult& mc, const std::optional<VarianceShares>& shares,
                     std::string_view shares_note) {
  out.csv("montecarlo_ranks.csv", [&](csv::Writer& w) {
    w.header({"economy", "baseline_rank", "q025", "q50", "q975", "ci_width"});
    for (const auto& c : mc.countries) w.cell(c.economy).cell(c.baseline_rank).cell(c.q025).cell(c.q50).cell(c.q975).cell(c.ci_width).end_row();
  });
  out.csv("montecarlo_sims.csv", [&](csv::Writer& w) {
    w.header({"sim", "w1", "w2", "w3", "within_year", "rho"});
    for (std::size_t i = 0; i < mc.sims.size(); ++i) {
      const auto& s = mc.sims[i];
      w.cell(i).cell(s.weights.w1).cell(s.weights.w2).cell(s.weights.w3).cell(s.within_year).cell(s.rho).end_row();
    }
  });
  ordered_json j;
  j["config"] = {{"n_sims", mc.config.n_sims},
                 {"dirichlet_alpha", mc.config.dirichlet_alpha},
                 {"equal_weights", mc.config.equal_weights},
                 {"noise_halfwidth", mc.config.noise_halfwidth},
                 {"p_switch", mc.config.p_switch},
                 {"seed", mc.config.seed},
                 {"min_years", mc.config.min_years}};
  j["mean_rho"] = mc.mean_rho;
  j["min_rho"] = mc.min_rho;
  j["share_rho_above_0_95"] = mc.share_above_095;
  j["share_rho_above_0_99"] = mc.share_above_099;
  j["mean_ci_width"] = mc.mean_ci_width;
  ordered_json rhos = ordered_json::array();
  for (const auto& s : mc.sims) rhos.push_back(s.rho);
  j["rho"] = rhos;
  if (shares) {
    j["variance_shares"] = {{"weights", shares->weight_share},
                            {"noise", shares->noise_share},
                            {"normalization", shares->normalization_share},
                            {"mean_rank_variance_weights", shares->weight_variance},
                            {"mean_rank_variance_noise", shares->noise_variance},
                            {"mean_rank_variance_normalization", shares->normalization_variance}};
  } else {
    j["variance_shares"] = nullptr;
    j["variance_shares_note"] = std::string(shares_note);
  }
  out.json("montecarlo.json", j);
}

void emit_validity(OutputDir& out, const analysis::ValidityReport& validity,
                   const std::optional<analysis::RegressionSuite>& regressions, std::string_view regressions_note) {
  out.csv("convergent_validity.csv", [&](csv::Writer& w) {
    w.header({"indicator", "year", "n", "rho", "p_value", "skipped"});
    for (const auto& r : validity.rows) {
      w.cell(r.indicator).cell(r.year).cell(r.n);
      w.cell(r.corr ? std::optional<double>(r.corr->rho) : std::nullopt);
      w.cell(r.corr ? std::optional<double>(r.corr->p_value) : std::nullopt).cell(r.skipped).end_row();
    }
  });
  ordered_json j;
  j["convergent_validity"] = {{"mean_rho_lpi", opt(validity.mean_rho_lpi)}, {"mean_rho_freight", opt(validity.mean_rho_freight)}};
  out.csv("regressions.csv", [&](csv::Writer& w) {
    w.header({"model", "regressor", "coef", "se", "t", "p_value", "r_squared", "n_obs", "n_clusters"});
    if (!regressions) return;
    auto rows = [&](const char* label, const stats::RegressionResult& r) {
      for (std::size_t k = 0; k < r.names.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        w.cell(label).cell(r.names[k]).cell(r.coef(i)).cell(r.se(i)).cell(r.t(i)).cell(r.p_value(i));
        w.cell(r.r_squared).cell(r.n_obs).cell(r.n_clusters).end_row();
      }
    };
    rows("model1", regressions->model1);
    rows("model2", regressions->model2);
    rows("model3", regressions->model3);
    if (regressions->fe) rows("fe", *regressions->fe);
    if (regressions->re) rows("re", *regressions->re);
  });
  if (regressions) {
    const auto& r = *regressions;
    ordered_json reg;
    reg["n_matched"] = r.n_matched;
    reg["n_dropped_nonpositive"] = r.n_dropped_nonpositive;
    reg["model1"] = to_json(r.model1);
    reg["model2"] = to_json(r.model2);
    reg["model3"] = to_json(r.model3);
    reg["model3_dropped"] = r.model3_dropped;
    reg["panel_regressors"] = r.panel_regressors;
    reg["fe"] = r.fe ? to_json(*r.fe) : ordered_json(nullptr);
    reg["re"] = r.re ? to_json(*r.re) : ordered_json(nullptr);
    if (r.hausman) {
      reg["hausman"] = {{"statistic", r.hausman->statistic},
                        {"p_value", r.hausman->p_value},
                        {"dof", r.hausman->dof},
                        {"pseudo_inverse", r.hausman->pseudo_inverse},
                        {"regressors", r.hausman->regressors}};
    } else {
      reg["hausman"] = nullptr;
    }
    reg["panel_note"] = r.panel_note;
    j["regressions"] = reg;
  } else {
    j["regressions"] = nullptr;
    j["regressions_note"] = std::string(regressions_note);
  }
  out.json("regressions.json", j);
}

void emit_events(OutputDir& out, const std::vector<EventOutcome>& events) {
  out.csv("events.csv", [&](csv::Writer& w) {
    w.header({"event", "pre_year", "crisis_year", "quartile", "n", "mean_pct_change"});
    for (const auto& e : events) {
      if (!e.report) continue;
      for (std::size_t q = 0; q < 4; ++q) {
        w.cell(e.spec.name).cell(e.spec.pre_year).cell(e.spec.crisis_year).cell("Q" + std::to_string(q + 1));
        w.cell(e.report->quartile_n[q]).cell(e.report->quartile_mean[q]).end_row();
      }
    }
  });
  out.csv("event_countries.csv", [&](csv::Writer& w) {
    w.header({"event", "economy", "mcvi_pre", "pct_change", "quartile"});
    for (const auto& e : events) {
      if (!e.report) continue;
      for (const auto& c : e.report->countries) w.cell(e.spec.name).cell(c.economy).cell(c.mcvi_pre).cell(c.pct_change).cell(c.quartile).end_row();
    }
  });
  ordered_json arr = ordered_json::array();
  for (const auto& e : events) {
    ordered_json j;
    j["event"] = e.spec.name;
    j["pre_year"] = e.spec.pre_year;
    j["crisis_year"] = e.spec.crisis_year;
    if (e.report) {
      const auto& r = *e.report;
      j["n"] = r.n;
      j["spearman"] = corr_json(r.spearman);
      j["mann_whitney_q4_q1"] = {{"u_q4", r.q4_vs_q1.u_a}, {"u_q1", r.q4_vs_q1.u_b}, {"z", r.q4_vs_q1.z}, {"p_value", r.q4_vs_q1.p_value}};
      j["quartile_mean_pct_change"] = r.quartile_mean;
      j["quartile_n"] = r.quartile_n;
    } else {
      j["skipped"] = e.skipped;
    }
    arr.push_back(j);
  }
  out.json("events.json", arr);
}

}  // namespace mcvi::report
