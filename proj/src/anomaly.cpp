#include "survcor/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <tuple>

#include "survcor/errors.hpp"
#include "survcor/stats.hpp"

namespace survcor {

std::vector<int> AlarmSeries::alarm_weeks() const {
  std::vector<int> weeks;
  for (const auto& e : entries) {
    if (e.alarm) {
      weeks.push_back(e.week);
    }
  }
  return weeks;
}

AlarmSeries ears_c(const TimeSeries& ts, int baseline, double alpha,
                   bool widen_interval) {
  if (baseline < 2) {
    throw DomainError("ears_c: baseline must be >= 2 weeks");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("ears_c: alpha must lie in (0, 1)");
  }
  const int n = ts.size();
  if (n <= baseline) {
    throw DomainError("ears_c: series of length " + std::to_string(n) +
                      " too short for a " + std::to_string(baseline) +
                      "-week baseline");
  }

  const double z = normal_quantile(1.0 - alpha / 2.0);
  const double widen =
      widen_interval ? std::sqrt(1.0 + 1.0 / static_cast<double>(baseline))
                     : 1.0;

  AlarmSeries out;
  out.region_index = ts.region_index;
  out.baseline = baseline;
  out.alpha = alpha;
  out.start_week = ts.start_week;
  out.n_weeks = n;
  out.entries.reserve(static_cast<std::size_t>(n - baseline));

  const auto& v = ts.values;
  for (int t = baseline; t < n; ++t) {
    double sum = 0.0;
    for (int u = t - baseline; u < t; ++u) {
      sum += v[static_cast<std::size_t>(u)];
    }
    const double mean = sum / static_cast<double>(baseline);
    double sq = 0.0;
    for (int u = t - baseline; u < t; ++u) {
      const double d = v[static_cast<std::size_t>(u)] - mean;
      sq += d * d;
    }
    const double sd = std::sqrt(sq / static_cast<double>(baseline - 1));

    AlarmEntry e;
    e.week = ts.start_week + t;
    e.observed = v[static_cast<std::size_t>(t)];
    e.mean = mean;
    e.sd = sd;
    if (sd > 0.0) {
      e.threshold = mean + z * sd * widen;
      e.c_stat = (e.observed - mean) / sd;
    } else {
      e.threshold = mean;
      e.c_stat = std::nullopt;
    }
    e.alarm = e.observed > e.threshold;
    out.entries.push_back(e);
  }
  return out;
}

std::vector<AlarmCluster> cluster_alarms(const AlarmSeries& a, int max_gap) {
  if (max_gap < 0) {
    throw DomainError("cluster_alarms: negative max_gap");
  }
  std::vector<AlarmCluster> clusters;
  int last_alarm = 0;
  for (const int week : a.alarm_weeks()) {
    if (clusters.empty() || week - last_alarm > max_gap + 1) {
      clusters.push_back({week, week, 1});
    } else {
      clusters.back().end_week = week;
      clusters.back().alarm_count += 1;
    }
    last_alarm = week;
  }
  return clusters;
}

OverlapReport alarm_overlap(const AlarmSeries& a, const AlarmSeries& b,
                            int tolerance) {
  if (tolerance < 0) {
    throw DomainError("alarm_overlap: negative tolerance");
  }
  if (a.start_week != b.start_week || a.n_weeks != b.n_weeks ||
      a.baseline != b.baseline) {
    throw DomainError(
        "alarm_overlap: alarm series cover different week ranges");
  }

  const auto wa = a.alarm_weeks();
  const auto wb = b.alarm_weeks();

  // Candidate pairs sorted by distance with a tie-break symmetric in the
  // two arguments, so swapping a and b yields the same matching.
  std::vector<std::tuple<int, int, int, int, int>> candidates;
  for (const int x : wa) {
    for (const int y : wb) {
      if (std::abs(x - y) <= tolerance) {
        candidates.emplace_back(std::abs(x - y), std::min(x, y),
                                std::max(x, y), x, y);
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<int> matched_from_a;
  std::vector<int> matched_from_b;
  double lead_sum = 0.0;
  int matched = 0;
  for (const auto& [d, lo, hi, x, y] : candidates) {
    if (std::find(matched_from_a.begin(), matched_from_a.end(), x) !=
            matched_from_a.end() ||
        std::find(matched_from_b.begin(), matched_from_b.end(), y) !=
            matched_from_b.end()) {
      continue;
    }
    matched_from_a.push_back(x);
    matched_from_b.push_back(y);
    lead_sum += static_cast<double>(y - x);
    ++matched;
  }

  OverlapReport report;
  report.alarms_a = static_cast<int>(wa.size());
  report.alarms_b = static_cast<int>(wb.size());
  report.matched_a = matched;
  report.matched_b = matched;
  const int denom = report.alarms_a + report.alarms_b - matched;
  report.jaccard = denom > 0 ? static_cast<double>(matched) / denom : 0.0;
  if (matched > 0) {
    report.mean_lead = lead_sum / matched;
  }
  return report;
}

void write_alarm_csv(const AlarmSeries& a, std::ostream& out) {
  out << "week,observed,mean,sd,threshold,alarm\n";
  char buf[48];
  for (const auto& e : a.entries) {
    out << e.week;
    for (const double v : {e.observed, e.mean, e.sd, e.threshold}) {
      std::snprintf(buf, sizeof(buf), "%.6g", v);
      out << ',' << buf;
    }
    out << ',' << (e.alarm ? 1 : 0) << '\n';
  }
}

}  // namespace survcor
