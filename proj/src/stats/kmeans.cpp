#include "mcvi/stats/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mcvi/error.hpp"
#include "mcvi/parallel.hpp"
#include "mcvi/rng.hpp"

namespace mcvi::stats {

namespace {

double squared_distance(const Eigen::MatrixXd& data, Eigen::Index i, const Eigen::MatrixXd& centroids, Eigen::Index c) {
  return (data.row(i) - centroids.row(c)).squaredNorm();
}

Eigen::MatrixXd seed_plus_plus(const Eigen::MatrixXd& data, int k, SplitMix64& rng) {
  const Eigen::Index n = data.rows();
  Eigen::MatrixXd centroids(k, data.cols());
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  auto first = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
  centroids.row(0) = data.row(first);
  chosen[static_cast<std::size_t>(first)] = true;

  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) d2[static_cast<std::size_t>(i)] = squared_distance(data, i, centroids, 0);

  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : d2) total += v;
    Eigen::Index pick = -1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2[static_cast<std::size_t>(i)];
        if (acc > target && d2[static_cast<std::size_t>(i)] > 0.0) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        // Rounding left the target past the last positive weight.
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (d2[static_cast<std::size_t>(i)] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!chosen[static_cast<std::size_t>(i)]) {
          pick = i;
          break;
        }
      }
    }
    centroids.row(c) = data.row(pick);
    chosen[static_cast<std::size_t>(pick)] = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      auto& v = d2[static_cast<std::size_t>(i)];
      v = std::min(v, squared_distance(data, i, centroids, c));
    }
  }
  return centroids;
}

void repair_empty(const Eigen::MatrixXd& data, const Eigen::MatrixXd& centroids, std::vector<int>& labels, int k) {
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++counts[static_cast<std::size_t>(l)];
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) continue;
    Eigen::Index far = -1;
    double best = -1.0;
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      const int l = labels[static_cast<std::size_t>(i)];
      if (counts[static_cast<std::size_t>(l)] < 2) continue;
      const double d = squared_distance(data, i, centroids, l);
      if (d > best) {
        best = d;
        far = i;
      }
    }
    if (far < 0) continue;  // cannot happen while k <= n
    --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
    labels[static_cast<std::size_t>(far)] = c;
    ++counts[static_cast<std::size_t>(c)];
  }
}

Eigen::MatrixXd update_centroids(const Eigen::MatrixXd& data, const std::vector<int>& labels, int k) {
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, data.cols());
  std::vector<double> counts(static_cast<std::size_t>(k), 0.0);
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    sums.row(l) += data.row(i);
    counts[static_cast<std::size_t>(l)] += 1.0;
  }
  for (int c = 0; c < k; ++c) sums.row(c) /= counts[static_cast<std::size_t>(c)];
  return sums;
}

double inertia_of(const Eigen::MatrixXd& data, const Eigen::MatrixXd& centroids, const std::vector<int>& labels) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < data.rows(); ++i) s += squared_distance(data, i, centroids, labels[static_cast<std::size_t>(i)]);
  return s;
}

}  // namespace

namespace kernels {

double assign_serial(const Eigen::MatrixXd& data, const Eigen::MatrixXd& centroids, std::vector<int>& labels) {
  const Eigen::Index n = data.rows();
  labels.resize(static_cast<std::size_t>(n));
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      const double d = squared_distance(data, i, centroids, c);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = best;
    total += best_d;
  }
  return total;
}

double assign_parallel(const Eigen::MatrixXd& data, const Eigen::MatrixXd& centroids, std::vector<int>& labels,
                       int threads) {
  const Eigen::Index n = data.rows();
  labels.resize(static_cast<std::size_t>(n));
  std::vector<double> dist(static_cast<std::size_t>(n));
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      const double d = squared_distance(data, i, centroids, c);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = best;
    dist[static_cast<std::size_t>(i)] = best_d;
  }
  // Summed in index order so the total does not depend on the thread count.
  double total = 0.0;
  for (double d : dist) total += d;
  return total;
}

namespace {

double point_silhouette(const Eigen::MatrixXd& data, std::span<const int> labels, const std::vector<int>& sizes,
                        Eigen::Index i, std::vector<double>& sums) {
  std::fill(sums.begin(), sums.end(), 0.0);
  for (Eigen::Index j = 0; j < data.rows(); ++j) {
    if (j == i) continue;
    sums[static_cast<std::size_t>(labels[static_cast<std::size_t>(j)])] += (data.row(i) - data.row(j)).norm();
  }
  const int own = labels[static_cast<std::size_t>(i)];
  const int own_size = sizes[static_cast<std::size_t>(own)];
  if (own_size <= 1) return 0.0;
  const double a = sums[static_cast<std::size_t>(own)] / (own_size - 1);
  double b = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (static_cast<int>(c) == own || sizes[c] == 0) continue;
    b = std::min(b, sums[c] / sizes[c]);
  }
  const double m = std::max(a, b);
  return m > 0.0 ? (b - a) / m : 0.0;
}

std::vector<int> cluster_sizes(std::span<const int> labels, int k) {
  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

}  // namespace

std::vector<double> silhouette_values_serial(const Eigen::MatrixXd& data, std::span<const int> labels, int k) {
  const auto sizes = cluster_sizes(labels, k);
  std::vector<double> out(static_cast<std::size_t>(data.rows()));
  std::vector<double> sums(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < data.rows(); ++i) out[static_cast<std::size_t>(i)] = point_silhouette(data, labels, sizes, i, sums);
  return out;
}

std::vector<double> silhouette_values_parallel(const Eigen::MatrixXd& data, std::span<const int> labels, int k,
                                               int threads) {
  const auto sizes = cluster_sizes(labels, k);
  std::vector<double> out(static_cast<std::size_t>(data.rows()));
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    std::vector<double> sums(static_cast<std::size_t>(k));
#pragma omp for schedule(dynamic, 16)
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      out[static_cast<std::size_t>(i)] = point_silhouette(data, labels, sizes, i, sums);
    }
  }
  return out;
}

}  // namespace kernels

double silhouette(const Eigen::MatrixXd& data, std::span<const int> assignments, int threads) {
  if (static_cast<Eigen::Index>(assignments.size()) != data.rows()) {
    throw Error(ErrorKind::InvalidConfig, "one assignment per row is required");
  }
  int k = 0;
  for (int l : assignments) {
    if (l < 0) throw Error(ErrorKind::InvalidConfig, "negative cluster label");
    k = std::max(k, l + 1);
  }
  int non_empty = 0;
  for (int s : kernels::cluster_sizes(assignments, k)) non_empty += s > 0 ? 1 : 0;
  if (non_empty < 2) throw Error(ErrorKind::SingleCluster, "silhouette needs at least two clusters");

  const auto values = threads == 1 ? kernels::silhouette_values_serial(data, assignments, k)
                                   : kernels::silhouette_values_parallel(data, assignments, k, threads);
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

ClusteringResult kmeans(const Eigen::MatrixXd& data, int k, std::uint64_t seed, const KMeansOptions& options) {
  const Eigen::Index n = data.rows();
  if (k < 1 || k > n) throw Error(ErrorKind::InvalidK, "k must lie in [1, n]", std::to_string(k));
  if (!data.allFinite()) throw Error(ErrorKind::InvalidConfig, "k-means input contains non-finite values");

  auto assign = [&](const Eigen::MatrixXd& c, std::vector<int>& labels) {
    return options.threads == 1 ? kernels::assign_serial(data, c, labels)
                                : kernels::assign_parallel(data, c, labels, options.threads);
  };

  ClusteringResult best;
  bool have_best = false;
  const int restarts = std::max(1, options.n_restarts);
  for (int r = 0; r < restarts; ++r) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(r));
    Eigen::MatrixXd centroids = seed_plus_plus(data, k, rng);
    std::vector<int> labels;
    std::vector<double> trace;
    int it = 0;
    while (it < options.max_iter) {
      assign(centroids, labels);
      repair_empty(data, centroids, labels, k);
      Eigen::MatrixXd next = update_centroids(data, labels, k);
      const double shift = (next - centroids).rowwise().norm().maxCoeff();
      centroids = std::move(next);
      trace.push_back(inertia_of(data, centroids, labels));
      ++it;
      if (shift < options.tol) break;
    }
    const double inertia = trace.empty() ? inertia_of(data, centroids, labels) : trace.back();
    if (!have_best || inertia < best.inertia) {
      best.assignments = std::move(labels);
      best.centroids = std::move(centroids);
      best.inertia = inertia;
      best.iterations = it;
      best.inertia_trace = std::move(trace);
      have_best = true;
    }
  }
  best.silhouette = k >= 2 ? silhouette(data, best.assignments, options.threads) : 0.0;
  return best;
}

}  // namespace mcvi::stats
