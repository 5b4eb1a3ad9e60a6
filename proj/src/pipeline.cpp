#include "mcvi/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mcvi/analysis/decomposition.hpp"
#include "mcvi/error.hpp"
#include "mcvi/parallel.hpp"
#include "mcvi/report.hpp"

namespace mcvi {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Build: return "build";
    case Command::Robustness: return "robustness";
    case Command::MonteCarlo: return "montecarlo";
    case Command::Decompose: return "decompose";
    case Command::Validate: return "validate";
    case Command::Events: return "events";
    case Command::Fixture: return "fixture";
    case Command::Report: return "report";
  }
  return "report";
}

std::optional<Command> parse_command(std::string_view s) noexcept {
  for (auto c : {Command::Build, Command::Robustness, Command::MonteCarlo, Command::Decompose, Command::Validate,
                 Command::Events, Command::Fixture, Command::Report}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

void RunConfig::validate() const {
  if (weights != "equal" && weights != "pca" && weights != "W1" && weights != "W2" && weights != "W3") {
    throw Error(ErrorKind::InvalidConfig, "unknown weight scheme " + weights, weights);
  }
  if (k_min < 2 || k_max < k_min) throw Error(ErrorKind::InvalidConfig, "cluster range must satisfy 2 <= k_min <= k_max");
  if (command == Command::Fixture && (fixture_economies < 4 || fixture_years < 2)) {
    throw Error(ErrorKind::InvalidConfig, "fixture needs at least 4 economies and 2 years");
  }
  monte_carlo().validate();
}

McConfig RunConfig::monte_carlo() const {
  McConfig mc;
  mc.n_sims = sims;
  mc.dirichlet_alpha = alpha;
  mc.noise_halfwidth = noise;
  mc.p_switch = p_switch;
  mc.seed = seed;
  mc.min_years = min_years;
  mc.n_threads = threads;
  return mc;
}

ordered_json RunConfig::to_json() const {
  return {{"command", std::string(to_string(command))},
          {"input", input.generic_string()},
          {"output", output.generic_string()},
          {"method", std::string(to_string(method))},
          {"weights", weights},
          {"min_years", min_years},
          {"sims", sims},
          {"alpha", alpha},
          {"noise", noise},
          {"pswitch", p_switch},
          {"seed", seed},
          {"threads", threads},
          {"k_min", k_min},
          {"k_max", k_max},
          {"fixture_economies", fixture_economies},
          {"fixture_years", fixture_years}};
}

WeightVector resolve_weights(std::string_view spec, const NormalizedPanel& norm) {
  if (spec == "equal") return WeightVector::equal();
  if (spec == "pca") return derive_pca_weights(norm);
  if (spec == "W1") return WeightVector::make(0.5, 0.25, 0.25);
  if (spec == "W2") return WeightVector::make(0.25, 0.5, 0.25);
  if (spec == "W3") return WeightVector::make(0.25, 0.25, 0.5);
  throw Error(ErrorKind::InvalidConfig, "unknown weight scheme " + std::string(spec), std::string(spec));
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string(), path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

namespace {

// Stage names in execution order.
class Stages {
 public:
  template <typename F>
  auto run(std::string name, F&& f) {
    json_.push_back(std::move(name));
    return f();
  }
  const ordered_json& json() const { return json_; }

 private:
  ordered_json json_ = ordered_json::array();
};

ordered_json file_entries(const std::vector<fs::path>& files, const fs::path& root) {
  ordered_json arr = ordered_json::array();
  std::vector<fs::path> sorted = files;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& f : sorted) {
    arr.push_back({{"file", fs::relative(f, root).generic_string()},
                   {"bytes", fs::file_size(f)},
                   {"sha256", sha256_file(f)}});
  }
  return arr;
}

bool wants(Command run, Command section) { return run == section || run == Command::Report; }

struct State {
  std::optional<report::OutputDir> out;
  Stages stages;
  ordered_json counts = ordered_json::object();
  ordered_json inputs = ordered_json::array();
};

void run_commands(const RunConfig& cfg, State& st) {
  auto& out = *st.out;
  if (cfg.command == Command::Fixture) {
    const auto bundle = st.stages.run("fixture", [&] {
      return generate_fixture(cfg.fixture_economies, cfg.fixture_years, cfg.seed);
    });
    st.stages.run("write", [&] {
      for (const auto kind : {DatasetKind::Lsci, DatasetKind::Lsbci, DatasetKind::Plsci, DatasetKind::Classification,
                              DatasetKind::External}) {
        std::ostringstream s;
        switch (kind) {
          case DatasetKind::Lsci: write_lsci(s, bundle.lsci()); break;
          case DatasetKind::Lsbci: write_lsbci(s, bundle.lsbci()); break;
          case DatasetKind::Plsci: write_plsci(s, bundle.plsci()); break;
          case DatasetKind::Classification: write_classifications(s, bundle.classifications()); break;
          case DatasetKind::External: write_external(s, bundle.external()); break;
        }
        out.text(file_name(kind), s.str());
      }
      return 0;
    });
    for (const auto& p : bundle.provenance()) st.counts[p.source] = p.rows;
    return;
  }

  const auto bundle = st.stages.run("ingest", [&] { return load_bundle(cfg.input); });
  for (const auto kind : {DatasetKind::Lsci, DatasetKind::Lsbci, DatasetKind::Plsci, DatasetKind::Classification,
                          DatasetKind::External}) {
    const auto path = cfg.input / file_name(kind);
    if (!fs::exists(path)) continue;
    st.inputs.push_back({{"file", std::string(file_name(kind))}, {"bytes", fs::file_size(path)}, {"sha256", sha256_file(path)}});
  }
  ordered_json per_year = ordered_json::object();
  for (const auto& [year, n] : bundle.economies_per_year()) per_year[std::to_string(year)] = n;
  st.counts["economies_per_year"] = per_year;
  for (const auto& p : bundle.provenance()) st.counts["rows_" + p.source] = p.rows;

  const auto raw = st.stages.run("dimensions", [&] { return build_raw_panel(bundle); });
  const auto norm = st.stages.run("normalize", [&] { return normalize_panel(raw, cfg.method); });
  const auto weights = resolve_weights(cfg.weights, norm);
  const auto index = st.stages.run("aggregate", [&] { return aggregate_mcvi(norm, weights); });
  const auto ranking = rank_countries(index, cfg.min_years);
  st.counts["raw_panel_rows"] = raw.rows.size();
  st.counts["index_rows"] = index.rows.size();
  st.counts["incomplete_rows"] = index.incomplete;
  st.counts["countries"] = ranking.rows.size();
  st.counts["weights"] = {weights.w1, weights.w2, weights.w3};

  const auto& cls = bundle.classifications();
  const auto& ext = bundle.external();

  if (wants(cfg.command, Command::Build)) {
    st.stages.run("build", [&] {
      report::emit_index(out, index, ranking);
      report::emit_descriptives(out, norm, index);
      report::emit_groups(out, analysis::group_statistics(index, cls));
      const auto trend = analysis::temporal_report(index, cls);
      report::emit_temporal(out, trend);
      report::emit_appendix(out, ranking, cls, trend, analysis::dominant_dimensions(ranking));
      if (cfg.weights != "equal") {
        const auto base = rank_countries(aggregate_mcvi(norm, WeightVector::equal()), cfg.min_years);
        report::emit_ranking(out, base, "country_ranking_equal.csv");
        std::size_t shared = 0;
        const double rho = analysis::ranking_agreement(base, ranking, &shared);
        out.json("weights_comparison.json", {{"weights", cfg.weights},
                                             {"w", {weights.w1, weights.w2, weights.w3}},
                                             {"spearman_vs_equal", rho},
                                             {"n", shared}});
      }
      return 0;
    });
  }
  if (wants(cfg.command, Command::Robustness)) {
    st.stages.run("robustness", [&] {
      report::emit_robustness(out, analysis::robustness_suite(raw, cfg.min_years));
      return 0;
    });
  }
  if (wants(cfg.command, Command::MonteCarlo)) {
    st.stages.run("montecarlo", [&] {
      const auto mc_cfg = cfg.monte_carlo();
      const auto mc = run_monte_carlo(raw, mc_cfg);
      std::optional<VarianceShares> shares;
      std::string note;
      try {
        shares = decompose_variance(raw, mc_cfg);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::AllVariancesZero) throw;
        note = e.what();
      }
      report::emit_montecarlo(out, mc, shares, note);
      return 0;
    });
  }
  if (wants(cfg.command, Command::Decompose)) {
    st.stages.run("decompose", [&] {
      const int n = static_cast<int>(ranking.rows.size());
      // Silhouettes need at least one multi-member cluster, so k stays below n.
      const int k_max = std::min(cfg.k_max, n - 1);
      const int k_min = std::min(cfg.k_min, k_max);
      stats::KMeansOptions opts;
      opts.threads = cfg.threads;
      report::emit_decomposition(out, analysis::dominant_dimensions(ranking),
                                 analysis::cluster_profiles(ranking, k_min, k_max, cfg.seed, opts));
      return 0;
    });
  }
  if (wants(cfg.command, Command::Validate)) {
    st.stages.run("validate", [&] {
      std::optional<analysis::RegressionSuite> reg;
      std::string note;
      try {
        reg = analysis::run_regressions(index, ext, cls);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InsufficientData && e.kind() != ErrorKind::RankDeficient &&
            e.kind() != ErrorKind::TooFewClusters) {
          throw;
        }
        note = e.what();
      }
      report::emit_validity(out, analysis::convergent_validity(index, ext), reg, note);
      return 0;
    });
  }
  if (wants(cfg.command, Command::Events)) {
    st.stages.run("events", [&] {
      std::vector<report::EventOutcome> events;
      for (const auto& spec : analysis::default_events()) {
        report::EventOutcome o{spec, std::nullopt, {}};
        try {
          o.report = analysis::event_study(index, ext, spec);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::InsufficientData) throw;
          o.skipped = e.what();
        }
        events.push_back(std::move(o));
      }
      report::emit_events(out, events);
      return 0;
    });
  }
}

ordered_json manifest_of(const RunConfig& cfg, const State& st, std::string_view status) {
  ordered_json m;
  m["tool"] = "mcvi";
  m["version"] = std::string(kVersion);
  m["status"] = std::string(status);
  m["config"] = cfg.to_json();
  m["openmp"] = openmp_enabled();
  m["inputs"] = st.inputs;
  m["outputs"] = file_entries(st.out->written(), st.out->path());
  m["row_counts"] = st.counts;
  m["stages"] = st.stages.json();
  return m;
}

RunResult run_with(const RunConfig& cfg, State& st) {
  cfg.validate();
  st.out.emplace(cfg.output);
  std::error_code ec;
  fs::remove(cfg.output / kFailureMarker, ec);
  run_commands(cfg, st);
  RunResult result;
  result.outputs = st.out->written();
  result.manifest = manifest_of(cfg, st, "ok");
  st.out->json(kManifest, result.manifest);
  return result;
}

}  // namespace

RunResult run_pipeline(const RunConfig& config) {
  State st;
  return run_with(config, st);
}

int execute(const RunConfig& config, std::ostream& err) {
  State st;
  ordered_json report;
  try {
    run_with(config, st);
    return 0;
  } catch (const Error& e) {
    report = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}, {"key", e.key()}};
  } catch (const std::exception& e) {
    report = {{"error", "Internal"}, {"message", e.what()}, {"key", ""}};
  }
  err << report.dump() << '\n';
  try {
    if (!st.out) st.out.emplace(config.output);
    auto m = manifest_of(config, st, "failed");
    m["error"] = report;
    st.out->json(kManifest, m);
    st.out->json(kFailureMarker, report);
  } catch (const std::exception& e) {
    err << ordered_json{{"error", "Io"}, {"message", std::string("could not write failure marker: ") + e.what()}}.dump() << '\n';
  }
  return 1;
}

}  // namespace mcvi
