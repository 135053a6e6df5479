#include "survcor/timeseries.hpp"

#include <string>

#include "survcor/errors.hpp"

namespace survcor {

TimeSeries fill_missing(std::span<const std::optional<double>> raw,
                        int region_index, int start_week) {
  if (raw.size() < 2) {
    throw DomainError("fill_missing: series too short (need >= 2 weeks, got " +
                      std::to_string(raw.size()) + ")");
  }

  const auto n = raw.size();
  std::size_t first_present = n;
  std::size_t last_present = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].has_value()) {
      if (first_present == n) {
        first_present = i;
      }
      last_present = i;
    }
  }
  if (first_present == n) {
    throw InsufficientDataError(
        "fill_missing: every entry is missing" +
        (region_index > 0 ? " for region " + std::to_string(region_index)
                          : std::string()));
  }

  TimeSeries out;
  out.region_index = region_index;
  out.start_week = start_week;
  out.values.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].has_value()) {
      out.values[i] = *raw[i];
      continue;
    }
    if (i < first_present) {
      out.values[i] = *raw[first_present];
    } else if (i > last_present) {
      out.values[i] = *raw[last_present];
    } else {
      // Interior gap: nearest present neighbors on both sides exist.
      std::size_t p = i;
      while (!raw[p].has_value()) {
        --p;
      }
      std::size_t f = i;
      while (!raw[f].has_value()) {
        ++f;
      }
      out.values[i] = (*raw[p] + *raw[f]) / 2.0;
    }
  }
  return out;
}

TimeSeries region_series(const SurveillanceTable& table, int region_index) {
  const auto raw = table.row_values(region_index);
  return fill_missing(raw, region_index, 1);
}

TimeSeries slice_weeks(const TimeSeries& ts, int first, int last,
                       int lag_max) {
  const int n = ts.size();
  if (first < 1 || last < first || last > n) {
    throw DomainError("slice_weeks: range " + std::to_string(first) + ".." +
                      std::to_string(last) + " out of bounds for length " +
                      std::to_string(n));
  }
  if (lag_max < 0) {
    throw DomainError("slice_weeks: negative lag window");
  }
  const int len = last - first + 1;
  const int min_len = 2 * lag_max + 2;
  if (len < min_len) {
    throw DomainError("slice_weeks: window of " + std::to_string(len) +
                      " weeks is too short for lag window " +
                      std::to_string(lag_max) + " (need >= " +
                      std::to_string(min_len) + ")");
  }
  TimeSeries out;
  out.region_index = ts.region_index;
  out.start_week = ts.start_week + (first - 1);
  out.differenced = ts.differenced;
  out.values.assign(ts.values.begin() + (first - 1),
                    ts.values.begin() + last);
  return out;
}

TimeSeries difference(const TimeSeries& ts) {
  const int n = ts.size();
  if (n < 2) {
    throw DomainError("difference: series too short (need >= 2 weeks, got " +
                      std::to_string(n) + ")");
  }
  TimeSeries out;
  out.region_index = ts.region_index;
  out.start_week = ts.start_week;
  out.differenced = true;
  out.values.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 0; i + 1 < n; ++i) {
    out.values.push_back(ts.values[static_cast<std::size_t>(i + 1)] -
                         ts.values[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace survcor
