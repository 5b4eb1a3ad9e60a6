#include "mcvi/analysis/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "mcvi/error.hpp"

namespace mcvi::analysis {

std::string_view to_string(Dimension d) noexcept {
  switch (d) {
    case Dimension::D1: return "D1";
    case Dimension::D2: return "D2";
    case Dimension::D3: return "D3";
  }
  return "?";
}

namespace {

std::vector<const CountryScore*> by_code(const CountryRanking& ranking) {
  std::vector<const CountryScore*> out;
  for (const auto& r : ranking.rows) out.push_back(&r);
  std::sort(out.begin(), out.end(), [](const auto* a, const auto* b) { return a->economy < b->economy; });
  return out;
}

}  // namespace

DominantReport dominant_dimensions(const CountryRanking& ranking) {
  DominantReport out;
  for (const auto* c : by_code(ranking)) {
    const double top = std::max({c->mean_d1, c->mean_d2, c->mean_d3});
    const int hits = (c->mean_d1 == top) + (c->mean_d2 == top) + (c->mean_d3 == top);
    DominantDimension d;
    d.economy = c->economy;
    d.tie = hits > 1;
    if (c->mean_d3 == top) {
      d.dimension = Dimension::D3;
      ++out.count_d3;
    } else if (c->mean_d1 == top) {
      d.dimension = Dimension::D1;
      ++out.count_d1;
    } else {
      d.dimension = Dimension::D2;
      ++out.count_d2;
    }
    out.ties += d.tie ? 1 : 0;
    out.countries.push_back(std::move(d));
  }
  return out;
}

ClusterReport cluster_profiles(const CountryRanking& ranking, int k_min, int k_max, std::uint64_t seed,
                               const stats::KMeansOptions& options) {
  const auto countries = by_code(ranking);
  const auto n = static_cast<Eigen::Index>(countries.size());
  if (k_min < 2 || k_max < k_min || k_max > n) {
    throw Error(ErrorKind::InvalidK, "k range must lie within [2, number of countries]",
                std::to_string(k_min) + ".." + std::to_string(k_max));
  }

  ClusterReport out;
  Eigen::MatrixXd raw(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto* c = countries[static_cast<std::size_t>(i)];
    out.economies.push_back(c->economy);
    raw(i, 0) = c->mean_d1;
    raw(i, 1) = c->mean_d2;
    raw(i, 2) = c->mean_d3;
  }
  out.standardized = Eigen::MatrixXd::Zero(n, 3);
  for (Eigen::Index j = 0; j < 3; ++j) {
    if ((raw.col(j).array() == raw(0, j)).all()) continue;
    const double m = raw.col(j).mean();
    const double ss = (raw.col(j).array() - m).square().sum();
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    if (sd > 0.0) out.standardized.col(j) = (raw.col(j).array() - m) / sd;
  }

  std::vector<int> labels;
  if (out.standardized.isZero(0.0)) {
    out.degenerate = true;
    out.k = 1;
    labels.assign(static_cast<std::size_t>(n), 0);
  } else {
    stats::ClusteringResult best;
    for (int k = k_min; k <= k_max; ++k) {
      auto fit = stats::kmeans(out.standardized, k, seed, options);
      out.candidates.push_back({k, fit.silhouette, fit.inertia});
      if (out.k == 0 || fit.silhouette > best.silhouette) {
        out.k = k;
        best = std::move(fit);
      }
    }
    out.silhouette = best.silhouette;
    labels = best.assignments;
  }

  // Renumber by ascending mean MCVI; ties keep the k-means label order.
  std::vector<ClusterSummary> sums(static_cast<std::size_t>(out.k));
  for (Eigen::Index i = 0; i < n; ++i) {
    auto& s = sums[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
    const auto* c = countries[static_cast<std::size_t>(i)];
    ++s.size;
    s.mean_mcvi += c->mean_mcvi;
    s.mean_d1 += c->mean_d1;
    s.mean_d2 += c->mean_d2;
    s.mean_d3 += c->mean_d3;
  }
  for (auto& s : sums) {
    if (s.size == 0) continue;
    const auto sz = static_cast<double>(s.size);
    s.mean_mcvi /= sz;
    s.mean_d1 /= sz;
    s.mean_d2 /= sz;
    s.mean_d3 /= sz;
  }
  std::vector<int> order(static_cast<std::size_t>(out.k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sums[static_cast<std::size_t>(a)].mean_mcvi < sums[static_cast<std::size_t>(b)].mean_mcvi;
  });
  std::vector<int> relabel(static_cast<std::size_t>(out.k));
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    relabel[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos) + 1;
    auto s = sums[static_cast<std::size_t>(order[pos])];
    s.cluster = static_cast<int>(pos) + 1;
    out.clusters.push_back(s);
  }
  out.labels.reserve(labels.size());
  for (int l : labels) out.labels.push_back(relabel[static_cast<std::size_t>(l)]);
  return out;
}

}  // namespace mcvi::analysis
