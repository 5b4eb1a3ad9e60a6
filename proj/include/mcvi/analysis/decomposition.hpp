#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "mcvi/index.hpp"
#include "mcvi/stats/kmeans.hpp"

namespace mcvi::analysis {

enum class Dimension { D1, D2, D3 };

std::string_view to_string(Dimension d) noexcept;

struct DominantDimension {
  EconomyId economy;
  Dimension dimension = Dimension::D1;
  bool tie = false;  // the maximum was shared; resolved D3 > D1 > D2
};

struct DominantReport {
  std::vector<DominantDimension> countries;  // code order
  int count_d1 = 0;
  int count_d2 = 0;
  int count_d3 = 0;
  int ties = 0;
};

/// argmax over a country's time-averaged (d1, d2, d3).
DominantReport dominant_dimensions(const CountryRanking& ranking);

struct KCandidate {
  int k = 0;
  double silhouette = 0.0;
  double inertia = 0.0;
};

struct ClusterSummary {
  int cluster = 0;  // 1-based, ascending mean MCVI
  std::size_t size = 0;
  double mean_mcvi = 0.0;
  double mean_d1 = 0.0;
  double mean_d2 = 0.0;
  double mean_d3 = 0.0;
};

struct ClusterReport {
  int k = 0;
  bool degenerate = false;  // every profile identical after standardisation
  double silhouette = 0.0;
  std::vector<KCandidate> candidates;
  std::vector<EconomyId> economies;  // code order
  std::vector<int> labels;           // 1-based cluster per economy
  Eigen::MatrixXd standardized;      // n x 3 z-scores, sample SD
  std::vector<ClusterSummary> clusters;
};

/// z-standardises country profiles, runs k-means for each k in
/// [k_min, k_max] and keeps the k with the highest silhouette (the smaller k
/// on a tie). Clusters are renumbered by ascending mean MCVI. A column with
/// zero spread standardises to 0; if all profiles coincide the report is
/// flagged degenerate with everyone in cluster 1. Throws InvalidK.
ClusterReport cluster_profiles(const CountryRanking& ranking, int k_min, int k_max, std::uint64_t seed,
                               const stats::KMeansOptions& options = {});

}  // namespace mcvi::analysis
