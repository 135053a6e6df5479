#pragma once

#include <span>
#include <vector>

#include "survcor/stats.hpp"
#include "survcor/timeseries.hpp"

namespace survcor {

/// Lagged sample cross-correlations for one pair of series over lags
/// -lag_max..lag_max. values[lag_max + k] holds the lag-k correlation.
struct CorrelationVector {
  int lag_max = 5;
  int n = 0;  // shared series length
  int region_i = 0;
  int region_j = 0;
  std::vector<double> values;

  double at_lag(int k) const;

  /// Lag of the largest correlation; ties resolve to the smallest lag.
  int arg_max_lag() const;
};

/// Weight applied to the lag-k correlation: 10 / (|k| + 1).
double lag_weight(int k);

std::vector<double> lag_weights(int lag_max);

/// Sum of all lag weights: the largest reachable |score| (39 at lag 5).
double max_abs_score(int lag_max);

/// Cross-correlate x against y over the +-lag_max window.
///
/// Correlations use full-series means and divide-by-n root-mean-square
/// deviations. A positive lag k correlates x moved k weeks ahead of y, so
/// when y is a delayed copy of x the peak sits at the (positive) delay.
/// Requires equal lengths of at least 2*lag_max + 2 and two non-constant
/// series.
CorrelationVector ccf(const TimeSeries& x, const TimeSeries& y,
                      int lag_max = 5);

/// ccf on raw spans with precomputed per-series stats. Every ccf entry
/// point funnels through this kernel, which makes swapping the argument
/// order an exact mirror of the lag axis: ccf(x,y)[k] == ccf(y,x)[-k]
/// bit for bit.
CorrelationVector ccf(std::span<const double> x, std::span<const double> y,
                      const SeriesStats& x_stats, const SeriesStats& y_stats,
                      int lag_max, int region_i = 0, int region_j = 0);

/// White-noise significance band for a sample cross-correlation:
/// z_{1-alpha/2} / sqrt(n).
double significance_threshold(double n, double alpha = 0.05);

/// Lag-weighted sum of the correlation vector, in [-39, 39] at lag 5.
double weighted_score(const CorrelationVector& cv);

}  // namespace survcor
