#include "mcvi/index.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mcvi/error.hpp"
#include "mcvi/stats/pca.hpp"

namespace mcvi {

WeightVector WeightVector::make(double w1, double w2, double w3) {
  WeightVector w{w1, w2, w3};
  w.validate();
  return w;
}

void WeightVector::validate() const {
  if (!(w1 >= 0.0 && w2 >= 0.0 && w3 >= 0.0)) throw Error(ErrorKind::InvalidWeights, "weights must be non-negative");
  if (std::fabs(w1 + w2 + w3 - 1.0) > 1e-12) throw Error(ErrorKind::InvalidWeights, "weights must sum to 1");
}

namespace {

bool is_equal(const WeightVector& w) {
  const auto e = WeightVector::equal();
  return w.w1 == e.w1 && w.w2 == e.w2 && w.w3 == e.w3;
}

}  // namespace

IndexPanel aggregate_mcvi(const NormalizedPanel& norm, const WeightVector& weights) {
  weights.validate();
  if (norm.rows.empty()) throw Error(ErrorKind::EmptyIndex, "normalized panel is empty");
  const bool equal = is_equal(weights);
  IndexPanel out;
  out.weights = weights;
  out.method = norm.method;
  out.rows.reserve(norm.rows.size());
  for (const auto& r : norm.rows) {
    if (!r.complete()) {
      ++out.incomplete;
      continue;
    }
    IndexRow row{r.economy, r.year, *r.d1, *r.d2, *r.d3, 0.0};
    row.mcvi = equal ? (row.d1 + row.d2 + row.d3) / 3.0
                     : weights.w1 * row.d1 + weights.w2 * row.d2 + weights.w3 * row.d3;
    out.rows.push_back(std::move(row));
  }
  return out;
}

const CountryScore* CountryRanking::find(std::string_view economy) const {
  for (const auto& r : rows) {
    if (r.economy == economy) return &r;
  }
  return nullptr;
}

CountryRanking rank_countries(const IndexPanel& index, int min_years) {
  if (min_years < 1) throw Error(ErrorKind::InvalidConfig, "min_years must be at least 1");
  if (index.rows.empty()) throw Error(ErrorKind::EmptyIndex, "index panel has no complete observations");

  struct Acc {
    double mcvi = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;
    int n = 0;
  };
  std::map<EconomyId, Acc> acc;
  for (const auto& r : index.rows) {
    auto& a = acc[r.economy];
    a.mcvi += r.mcvi;
    a.d1 += r.d1;
    a.d2 += r.d2;
    a.d3 += r.d3;
    ++a.n;
  }

  CountryRanking out;
  out.min_years = min_years;
  out.rows.reserve(acc.size());
  for (const auto& [economy, a] : acc) {
    CountryScore s;
    s.economy = economy;
    s.mean_mcvi = a.mcvi / a.n;
    s.mean_d1 = a.d1 / a.n;
    s.mean_d2 = a.d2 / a.n;
    s.mean_d3 = a.d3 / a.n;
    s.years_covered = a.n;
    s.below_min_years = a.n < min_years;
    out.rows.push_back(std::move(s));
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const CountryScore& a, const CountryScore& b) {
    if (a.mean_mcvi != b.mean_mcvi) return a.mean_mcvi > b.mean_mcvi;
    return a.economy < b.economy;
  });
  for (std::size_t i = 0; i < out.rows.size(); ++i) out.rows[i].rank = static_cast<int>(i + 1);
  return out;
}

WeightVector derive_pca_weights(const NormalizedPanel& norm) {
  std::vector<const NormalizedRow*> complete;
  for (const auto& r : norm.rows) {
    if (r.complete()) complete.push_back(&r);
  }
  if (complete.size() < 3) throw Error(ErrorKind::DegenerateVariance, "PCA weights need at least 3 complete rows");
  Eigen::MatrixXd data(static_cast<Eigen::Index>(complete.size()), 3);
  for (std::size_t i = 0; i < complete.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    data(row, 0) = *complete[i]->d1;
    data(row, 1) = *complete[i]->d2;
    data(row, 2) = *complete[i]->d3;
  }
  stats::PcaResult p;
  try {
    p = stats::pca(data, stats::PcaMode::Correlation);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InsufficientData) throw Error(ErrorKind::DegenerateVariance, e.what());
    throw;
  }
  Eigen::Vector3d pc1 = p.loadings.col(0);
  if (pc1.sum() < 0.0) pc1 = -pc1;
  const Eigen::Vector3d a = pc1.cwiseAbs();
  const double total = a.sum();
  // w3 absorbs the rounding so the three sum to 1 within the validation tolerance.
  const double w1 = a(0) / total;
  const double w2 = a(1) / total;
  return WeightVector::make(w1, w2, 1.0 - w1 - w2);
}

}  // namespace mcvi
