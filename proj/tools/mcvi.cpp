#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "mcvi/pipeline.hpp"

namespace {

void add_run_options(CLI::App* sub, mcvi::RunConfig& cfg, std::string& method) {
  sub->add_option("--input", cfg.input, "Directory holding the five input CSVs")->check(CLI::ExistingDirectory);
  sub->add_option("--output", cfg.output, "Directory for reports and manifest.json");
  sub->add_option("--method", method, "Normalization")
      ->check(CLI::IsMember({"pooled-rank", "within-year", "minmax"}))
      ->capture_default_str();
  sub->add_option("--weights", cfg.weights, "Dimension weights")
      ->check(CLI::IsMember({"equal", "pca", "W1", "W2", "W3"}))
      ->capture_default_str();
  sub->add_option("--min-years", cfg.min_years, "Coverage below which a country is flagged")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--sims", cfg.sims, "Monte Carlo simulations")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--alpha", cfg.alpha, "Symmetric Dirichlet concentration")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--noise", cfg.noise, "Half-width of the multiplicative noise")->check(CLI::Range(0.0, 0.999999))->capture_default_str();
  sub->add_option("--pswitch", cfg.p_switch, "Probability of within-year normalization")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sub->add_option("--seed", cfg.seed, "Seed for every random draw")->capture_default_str();
  sub->add_option("--threads", cfg.threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maritime connectivity vulnerability index: build, analyse and stress-test"};
  app.set_version_flag("--version", std::string(mcvi::kVersion));
  app.require_subcommand(1);

  mcvi::RunConfig cfg;
  std::string method = "pooled-rank";

  const std::map<std::string, std::string> commands = {
      {"build", "Index panel, country ranking, descriptives, groups and trends"},
      {"robustness", "Rank agreement under six alternative specifications"},
      {"montecarlo", "Monte Carlo rank uncertainty and variance decomposition"},
      {"decompose", "Dominant dimensions and k-means country profiles"},
      {"validate", "Convergent validity and panel regressions"},
      {"events", "Disruption event studies"},
      {"report", "Every report above"},
  };
  for (const auto& [name, help] : commands) add_run_options(app.add_subcommand(name, help), cfg, method);

  auto* fixture = app.add_subcommand("fixture", "Write a synthetic input bundle");
  fixture->add_option("--output", cfg.output, "Directory for the five CSVs");
  fixture->add_option("--economies", cfg.fixture_economies, "Number of economies")->capture_default_str();
  fixture->add_option("--years", cfg.fixture_years, "Number of years from 2006")->capture_default_str();
  fixture->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.command = *mcvi::parse_command(app.get_subcommands().front()->get_name());
  cfg.method = *mcvi::parse_normalization(method);
  return mcvi::execute(cfg, std::cerr);
}
