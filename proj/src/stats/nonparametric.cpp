#include "mcvi/stats/nonparametric.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <vector>

#include "mcvi/error.hpp"
#include "mcvi/stats/ranks.hpp"

namespace mcvi::stats {

MannWhitney mann_whitney(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySample, "both samples need at least one value");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = average_ranks(pooled);

  MannWhitney out;
  out.n_a = a.size();
  out.n_b = b.size();
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) rank_sum_a += ranks[i];
  out.u_a = rank_sum_a - na * (na + 1.0) / 2.0;
  out.u_b = na * nb - out.u_a;

  const double n = na + nb;
  const double ties = tie_correction_term(pooled);
  const double var = na * nb / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
  if (var <= 0.0) return out;  // every value tied: no evidence either way
  const double dev = std::max(0.0, std::fabs(out.u_a - na * nb / 2.0) - 0.5);
  out.z = dev / std::sqrt(var);
  const boost::math::normal_distribution<double> normal;
  out.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(normal, out.z)));
  return out;
}

LinearTrend linear_trend(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw Error(ErrorKind::InsufficientData, "trend series differ in length");
  const double mt = mean(t);
  const double my = mean(y);
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    sty += (t[i] - mt) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (t.size() < 2 || !(stt > 0.0)) throw Error(ErrorKind::DegenerateTime, "trend needs two distinct time points");
  LinearTrend out;
  out.n = t.size();
  out.slope = sty / stt;
  out.intercept = my - out.slope * mt;
  out.r_squared = syy > 0.0 ? sty * sty / (stt * syy) : 1.0;
  return out;
}

}  // namespace mcvi::stats
