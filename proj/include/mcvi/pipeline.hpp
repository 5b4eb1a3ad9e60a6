#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mcvi/normalize.hpp"
#include "mcvi/uncertainty.hpp"

namespace mcvi {

inline constexpr std::string_view kVersion = "1.0.0";
/// Written to the output directory whenever a run fails.
inline constexpr std::string_view kFailureMarker = "FAILED.json";
inline constexpr std::string_view kManifest = "manifest.json";

enum class Command { Build, Robustness, MonteCarlo, Decompose, Validate, Events, Fixture, Report };

std::string_view to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view s) noexcept;

struct RunConfig {
  Command command = Command::Report;
  std::filesystem::path input = "data";
  std::filesystem::path output = "out";
  NormalizationMethod method = NormalizationMethod::PooledRank;
  std::string weights = "equal";  // equal | pca | W1 | W2 | W3
  int min_years = 1;
  int sims = 1000;
  double alpha = 20.0;
  double noise = 0.05;
  double p_switch = 0.30;
  std::uint64_t seed = 42;
  int threads = 0;
  int k_min = 2;
  int k_max = 6;
  int fixture_economies = 20;
  int fixture_years = 5;

  /// Throws InvalidConfig.
  void validate() const;
  McConfig monte_carlo() const;
  nlohmann::ordered_json to_json() const;
};

/// "equal" -> 1/3 each; "pca" -> derive_pca_weights(norm); "Wd" puts 1/2 on
/// dimension d and 1/4 on each of the other two. Throws InvalidConfig.
WeightVector resolve_weights(std::string_view spec, const NormalizedPanel& norm);

/// Lower-case hex SHA-256 of a file's bytes. Throws Io.
std::string sha256_file(const std::filesystem::path& path);

struct RunResult {
  std::vector<std::filesystem::path> outputs;  // excluding the manifest
  nlohmann::ordered_json manifest;
};

/// Runs one command end to end and writes manifest.json last. Throws Error;
/// files written before the failure stay on disk.
RunResult run_pipeline(const RunConfig& config);

/// run_pipeline with the failure protocol: on error a one-line JSON report
/// goes to `err`, FAILED.json is written to the output directory and 1 is
/// returned. A stale FAILED.json from an earlier run is removed first.
int execute(const RunConfig& config, std::ostream& err);

}  // namespace mcvi
