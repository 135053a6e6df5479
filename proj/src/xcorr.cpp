#include "survcor/xcorr.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "survcor/errors.hpp"

namespace survcor {

namespace {

/// Correlation of `lead` moved `lag` weeks ahead of `follow`, normalized
/// by the full-series stats of both (divide-by-n convention).
double lagged_correlation(std::span<const double> lead,
                          std::span<const double> follow, int lag,
                          const SeriesStats& lead_stats,
                          const SeriesStats& follow_stats) {
  const std::size_t n = lead.size();
  const std::size_t k = static_cast<std::size_t>(lag);
  double acc = 0.0;
  for (std::size_t t = k; t < n; ++t) {
    acc += (lead[t - k] - lead_stats.mean) * (follow[t] - follow_stats.mean);
  }
  return acc /
         (static_cast<double>(n) * (lead_stats.rms * follow_stats.rms));
}

}  // namespace

double CorrelationVector::at_lag(int k) const {
  if (k < -lag_max || k > lag_max) {
    throw DomainError("CorrelationVector: lag " + std::to_string(k) +
                      " outside +-" + std::to_string(lag_max));
  }
  return values[static_cast<std::size_t>(lag_max + k)];
}

int CorrelationVector::arg_max_lag() const {
  int best = -lag_max;
  for (int k = -lag_max + 1; k <= lag_max; ++k) {
    if (at_lag(k) > at_lag(best)) {
      best = k;
    }
  }
  return best;
}

double lag_weight(int k) { return 10.0 / (std::abs(k) + 1); }

std::vector<double> lag_weights(int lag_max) {
  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(2 * lag_max + 1));
  for (int k = -lag_max; k <= lag_max; ++k) {
    weights.push_back(lag_weight(k));
  }
  return weights;
}

double max_abs_score(int lag_max) {
  double total = 0.0;
  for (int k = -lag_max; k <= lag_max; ++k) {
    total += lag_weight(k);
  }
  return total;
}

CorrelationVector ccf(std::span<const double> x, std::span<const double> y,
                      const SeriesStats& x_stats, const SeriesStats& y_stats,
                      int lag_max, int region_i, int region_j) {
  if (lag_max < 0) {
    throw DomainError("ccf: negative lag window");
  }
  if (x.size() != y.size()) {
    throw DomainError("ccf: series lengths differ (" +
                      std::to_string(x.size()) + " vs " +
                      std::to_string(y.size()) + ")");
  }
  const int n = static_cast<int>(x.size());
  if (n < 2 * lag_max + 2) {
    throw DomainError("ccf: series of length " + std::to_string(n) +
                      " too short for lag window " + std::to_string(lag_max) +
                      " (need >= " + std::to_string(2 * lag_max + 2) + ")");
  }
  if (x_stats.rms == 0.0 || y_stats.rms == 0.0) {
    throw DomainError("ccf: constant series has no defined correlation");
  }

  CorrelationVector cv;
  cv.lag_max = lag_max;
  cv.n = n;
  cv.region_i = region_i;
  cv.region_j = region_j;
  cv.values.resize(static_cast<std::size_t>(2 * lag_max + 1));
  cv.values[static_cast<std::size_t>(lag_max)] =
      lagged_correlation(x, y, 0, x_stats, y_stats);
  for (int k = 1; k <= lag_max; ++k) {
    cv.values[static_cast<std::size_t>(lag_max + k)] =
        lagged_correlation(x, y, k, x_stats, y_stats);
    cv.values[static_cast<std::size_t>(lag_max - k)] =
        lagged_correlation(y, x, k, y_stats, x_stats);
  }
  return cv;
}

CorrelationVector ccf(const TimeSeries& x, const TimeSeries& y, int lag_max) {
  return ccf(x.values, y.values, series_stats(x.values),
             series_stats(y.values), lag_max, x.region_index, y.region_index);
}

double significance_threshold(double n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("significance_threshold: alpha must lie in (0, 1)");
  }
  if (!(n >= 2.0)) {
    throw DomainError("significance_threshold: n must be >= 2");
  }
  return normal_quantile(1.0 - alpha / 2.0) / std::sqrt(n);
}

double weighted_score(const CorrelationVector& cv) {
  if (static_cast<int>(cv.values.size()) != 2 * cv.lag_max + 1) {
    throw DomainError("weighted_score: malformed correlation vector");
  }
  // Sum the +-k pairs first: each pair term commutes bitwise under a lag
  // mirror, so cs_ij == cs_ji exactly, and at lag 5 the all-ones vector
  // lands on 39.0 exactly in double arithmetic.
  const auto at = [&](int k) {
    return cv.values[static_cast<std::size_t>(cv.lag_max + k)];
  };
  double acc = 0.0;
  for (int k = 1; k <= cv.lag_max; ++k) {
    acc += lag_weight(k) * at(k) + lag_weight(k) * at(-k);
  }
  return acc + lag_weight(0) * at(0);
}

}  // namespace survcor
