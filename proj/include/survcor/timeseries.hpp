#pragma once

#include <optional>
#include <span>
#include <vector>

#include "survcor/ingest.hpp"

namespace survcor {

/// A gap-free weekly series for one region. `differenced` marks output of
/// difference(): such series may go negative and reports label their axes
/// accordingly.
struct TimeSeries {
  int region_index = 0;  // 1-based, 0 for synthetic/unattributed series
  int start_week = 1;    // 1-based week ordinal of values.front()
  bool differenced = false;
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
};

/// Fill absent entries: every position inside a gap gets the average of
/// the nearest present neighbors, (p + f) / 2; leading and trailing gaps
/// copy the nearest present value. Present entries pass through
/// bit-exactly, so the operation is idempotent.
TimeSeries fill_missing(std::span<const std::optional<double>> raw,
                        int region_index = 0, int start_week = 1);

/// fill_missing applied to one table row (1-based region index).
TimeSeries region_series(const SurveillanceTable& table, int region_index);

/// Keep weeks first..last (inclusive, 1-based positions into the series).
/// The result must keep at least 2*lag_max + 2 weeks so a lag window that
/// wide stays usable downstream.
TimeSeries slice_weeks(const TimeSeries& ts, int first, int last,
                       int lag_max = 5);

/// First differences v[t+1] - v[t]; one week shorter, marked differenced.
TimeSeries difference(const TimeSeries& ts);

}  // namespace survcor
