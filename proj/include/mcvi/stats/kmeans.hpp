#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mcvi::stats {

struct KMeansOptions {
  int n_restarts = 10;
  int max_iter = 300;
  double tol = 1e-10;  // stop once every centroid moves less than this (Euclidean)
  int threads = 0;     // 0 = OpenMP default, 1 = serial reference path
};

struct ClusteringResult {
  std::vector<int> assignments;  // cluster id per row
  Eigen::MatrixXd centroids;     // k x d
  double inertia = 0.0;          // sum of squared distances to assigned centroid
  double silhouette = 0.0;       // 0 when k == 1
  int iterations = 0;
  std::vector<double> inertia_trace;  // inertia after each Lloyd step of the winning restart
};

/// Lloyd's algorithm with k-means++ seeding drawn from SplitMix64 streams
/// (restart r uses stream r of `seed`). The restart with the lowest inertia
/// wins; ties keep the earlier restart. A cluster that empties is refilled
/// with the point farthest from its current centroid. Throws InvalidK.
ClusteringResult kmeans(const Eigen::MatrixXd& data, int k, std::uint64_t seed, const KMeansOptions& options = {});

/// Mean silhouette over all points with Euclidean distances. Points in
/// singleton clusters score 0, and a 0/0 ratio counts as 0. Throws
/// SingleCluster when fewer than two clusters are non-empty.
double silhouette(const Eigen::MatrixXd& data, std::span<const int> assignments, int threads = 0);

namespace kernels {

/// Nearest-centroid assignment; returns the total squared distance.
double assign_serial(const Eigen::MatrixXd& data, const Eigen::MatrixXd& centroids, std::vector<int>& labels);
double assign_parallel(const Eigen::MatrixXd& data, const Eigen::MatrixXd& centroids, std::vector<int>& labels,
                       int threads);

/// Per-point silhouette values.
std::vector<double> silhouette_values_serial(const Eigen::MatrixXd& data, std::span<const int> labels, int k);
std::vector<double> silhouette_values_parallel(const Eigen::MatrixXd& data, std::span<const int> labels, int k,
                                               int threads);

}  // namespace kernels

}  // namespace mcvi::stats
