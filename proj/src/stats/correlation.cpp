#include "mcvi/stats/correlation.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <vector>

#include "mcvi/error.hpp"
#include "mcvi/stats/ranks.hpp"

namespace mcvi::stats {

namespace {

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::InsufficientData, "paired samples differ in length");
}

std::pair<std::vector<double>, std::vector<double>> pairwise_complete(std::span<const std::optional<double>> x,
                                                                      std::span<const std::optional<double>> y) {
  check_lengths(x.size(), y.size());
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && y[i]) {
      xs.push_back(*x[i]);
      ys.push_back(*y[i]);
    }
  }
  return {std::move(xs), std::move(ys)};
}

}  // namespace

double correlation_p_value(double r, std::size_t n) {
  if (n < 3) return 1.0;
  const double dof = static_cast<double>(n - 2);
  const double denom = (1.0 - r) * (1.0 + r);
  if (denom <= 0.0) return 0.0;
  const double t = r * std::sqrt(dof / denom);
  boost::math::students_t_distribution<double> dist(dof);
  return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))), 0.0, 1.0);
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  check_lengths(x.size(), y.size());
  const std::size_t n = x.size();
  if (n < 3) throw Error(ErrorKind::InsufficientData, "correlation needs at least 3 pairs");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw Error(ErrorKind::ZeroVariance, "correlation with a constant sample");
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return {r, correlation_p_value(r, n), n};
}

Correlation pearson(std::span<const std::optional<double>> x, std::span<const std::optional<double>> y) {
  const auto [xs, ys] = pairwise_complete(x, y);
  return pearson(xs, ys);
}

Correlation spearman(std::span<const double> x, std::span<const double> y) {
  check_lengths(x.size(), y.size());
  if (x.size() < 3) throw Error(ErrorKind::InsufficientData, "correlation needs at least 3 pairs");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

Correlation spearman(std::span<const std::optional<double>> x, std::span<const std::optional<double>> y) {
  const auto [xs, ys] = pairwise_complete(x, y);
  return spearman(xs, ys);
}

}  // namespace mcvi::stats
