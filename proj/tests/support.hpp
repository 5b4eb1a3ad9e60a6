#pragma once

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mcvi/dimensions.hpp"
#include "mcvi/error.hpp"
#include "mcvi/rng.hpp"

namespace mcvi::test {

/// Rank by counting: (#less) + (#equal + 1) / 2. Quadratic, no sorting.
inline std::vector<double> brute_force_ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0.0, equal = 0.0;
    for (double x : v) {
      if (x < v[i]) less += 1.0;
      if (x == v[i]) equal += 1.0;
    }
    r[i] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

/// Column of n values on a coarse grid so ties are common; about
/// `missing_rate` of the entries are absent.
inline std::vector<std::optional<double>> tied_column(SplitMix64& rng, std::size_t n, double missing_rate = 0.0) {
  std::vector<std::optional<double>> v(n);
  const auto levels = 2 + rng.below(20);
  for (auto& x : v) {
    if (rng.uniform() < missing_rate) continue;
    x = static_cast<double>(rng.below(levels)) * 0.25 - 1.0;
  }
  return v;
}

inline bool throws_kind(ErrorKind kind, const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

/// Raw panel whose three dimensions rank identically: every indicator is a
/// monotone function of one level v with the same orientation (HHI = 1/v
/// rises as LSCI = v falls). Levels of different economies never overlap.
inline RawDimensionPanel comonotone_panel(int n_economies, int n_years) {
  RawDimensionPanel p;
  for (int e = 0; e < n_economies; ++e) {
    char code[8];
    std::snprintf(code, sizeof code, "E%02d", e);
    for (int y = 0; y < n_years; ++y) {
      const double v = 1.0 + e + 0.01 * y * (e % 3);
      RawDimensionRow r;
      r.economy = code;
      r.year = 2006 + y;
      r.lsci = v;
      r.mean_lsbci = v / 100.0;
      r.partner_count = v;
      r.port_hhi = 1.0 / v;
      p.rows.push_back(r);
    }
  }
  return p;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("mcvi_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
}

}  // namespace mcvi::test
