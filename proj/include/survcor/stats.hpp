#pragma once

#include <cstddef>
#include <span>

namespace survcor {

/// Sample summary over a set of values. sd uses the n-1 denominator and is
/// 0 for a single value; the median of an even count is the midpoint of
/// the two central values.
struct SummaryStats {
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

/// Mean and root-mean-square deviation (divide-by-n) of one series.
struct SeriesStats {
  double mean = 0.0;
  double rms = 0.0;
};

SeriesStats series_stats(std::span<const double> values);

/// Throws InsufficientDataError when values is empty.
SummaryStats describe(std::span<const double> values);

/// Pearson correlation of two paired vectors. Throws DomainError on a
/// length mismatch and InsufficientDataError when fewer than two pairs
/// are given or either side has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

/// Quantile function of the standard normal distribution (Wichura's
/// PPND16 rational approximation, good to roughly 1e-15). Throws
/// DomainError unless 0 < p < 1.
double normal_quantile(double p);

}  // namespace survcor
