#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "survcor/timeseries.hpp"

namespace survcor {

/// One evaluable week of an EARS-C run. mean/sd summarize the preceding
/// baseline window; c_stat is (observed - mean) / sd and is absent when
/// the window is flat (sd == 0).
struct AlarmEntry {
  int week = 0;  // absolute 1-based week ordinal
  double observed = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  double threshold = 0.0;
  bool alarm = false;
  std::optional<double> c_stat;
};

/// Per-week EARS-C verdicts for one region. The first `baseline` weeks of
/// the underlying series carry no verdict and have no entries.
struct AlarmSeries {
  int region_index = 0;
  int baseline = 7;
  double alpha = 0.05;
  int start_week = 1;  // first week of the underlying series
  int n_weeks = 0;     // length of the underlying series
  std::vector<AlarmEntry> entries;

  std::vector<int> alarm_weeks() const;
};

/// Maximal run of alarms whose internal gaps never exceed the clustering
/// max_gap. start_week and end_week are both alarm weeks.
struct AlarmCluster {
  int start_week = 0;
  int end_week = 0;
  int alarm_count = 0;
};

/// Jaccard-style overlap between two alarm patterns. matched_a/matched_b
/// count alarms that found a partner within the tolerance (equal under
/// one-to-one matching); mean_lead is the mean of week_b - week_a over
/// matched pairs, so positive values mean a precedes b.
struct OverlapReport {
  double jaccard = 0.0;
  int matched_a = 0;
  int matched_b = 0;
  std::optional<double> mean_lead;
  int alarms_a = 0;
  int alarms_b = 0;
};

/// EARS-C sliding-window detector.
///
/// For each week t past the baseline, the preceding `baseline` values give a
/// mean m and sample sd s (n-1 denominator); the week alarms when its
/// observed count strictly exceeds m + z_{1-alpha/2} * s * sqrt(1 + 1/B).
/// A flat window (s == 0) degrades the threshold to m. Set
/// widen_interval=false for the plain C1 threshold without the
/// prediction-interval inflation.
AlarmSeries ears_c(const TimeSeries& ts, int baseline = 7, double alpha = 0.05,
                   bool widen_interval = true);

/// Greedy left-to-right alarm grouping: an alarm joins the current
/// cluster while the non-alarm gap to the cluster's last alarm stays
/// within max_gap weeks.
std::vector<AlarmCluster> cluster_alarms(const AlarmSeries& a,
                                         int max_gap = 2);

/// Match alarms of a and b that lie within +-tolerance weeks (greedy
/// nearest matching, each alarm used at most once) and report the overlap.
/// Both series must cover the same week range with the same baseline.
OverlapReport alarm_overlap(const AlarmSeries& a, const AlarmSeries& b,
                            int tolerance = 1);

/// CSV export: header `week,observed,mean,sd,threshold,alarm`.
void write_alarm_csv(const AlarmSeries& a, std::ostream& out);

}  // namespace survcor
