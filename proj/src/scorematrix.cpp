#include "survcor/scorematrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "survcor/errors.hpp"
#include "survcor/timeseries.hpp"

namespace survcor {

ScoreMatrix::ScoreMatrix(std::vector<RegionRecord> regions, int lag_max,
                         WeekRange weeks, bool prewhitened,
                         std::vector<double> scores,
                         std::vector<SkippedPair> skipped)
    : regions_(std::move(regions)),
      lag_max_(lag_max),
      weeks_(weeks),
      prewhitened_(prewhitened),
      scores_(std::move(scores)),
      skipped_(std::move(skipped)) {}

std::size_t ScoreMatrix::pair_index(int i, int j) const {
  const std::size_t n = regions_.size();
  const std::size_t a = static_cast<std::size_t>(i - 1);
  const std::size_t b = static_cast<std::size_t>(j - 1);
  return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

std::optional<double> ScoreMatrix::score(int i, int j) const {
  const int n = n_regions();
  if (i < 1 || i > n || j < 1 || j > n) {
    throw DomainError("score: region pair (" + std::to_string(i) + ", " +
                      std::to_string(j) + ") out of range 1.." +
                      std::to_string(n));
  }
  if (i == j) {
    throw DomainError("score: the diagonal is not defined (i == j == " +
                      std::to_string(i) + ")");
  }
  const double v = scores_[pair_index(std::min(i, j), std::max(i, j))];
  if (std::isnan(v)) {
    return std::nullopt;
  }
  return v;
}

std::vector<double> ScoreMatrix::stored_scores() const {
  std::vector<double> out;
  out.reserve(scores_.size());
  for (const double v : scores_) {
    if (!std::isnan(v)) {
      out.push_back(v);
    }
  }
  return out;
}

namespace {

struct PreparedSeries {
  std::vector<double> values;
  SeriesStats stats{};
  bool usable = false;
};

std::vector<PreparedSeries> prepare_series(const SurveillanceTable& table,
                                           const WeekRange& weeks,
                                           const ComputeOptions& options) {
  std::vector<PreparedSeries> prepared;
  prepared.reserve(static_cast<std::size_t>(table.n_regions()));
  for (int i = 1; i <= table.n_regions(); ++i) {
    TimeSeries ts = region_series(table, i);
    ts = slice_weeks(ts, weeks.first, weeks.last, options.lag_max);
    if (options.prewhiten) {
      ts = difference(ts);
      if (ts.size() < 2 * options.lag_max + 2) {
        throw DomainError(
            "compute_all: window too short for lag analysis after "
            "differencing");
      }
    }
    PreparedSeries p;
    p.stats = series_stats(ts.values);
    p.usable = p.stats.rms > 0.0;
    p.values = std::move(ts.values);
    prepared.push_back(std::move(p));
  }
  return prepared;
}

}  // namespace

ScoreMatrix compute_all(const SurveillanceTable& table,
                        const ComputeOptions& options) {
  const int n = table.n_regions();
  if (n < 2) {
    throw InsufficientDataError("compute_all: need at least 2 regions, got " +
                                std::to_string(n));
  }
  WeekRange weeks = options.weeks.value_or(WeekRange{1, table.weeks});
  if (weeks.first < 1 || weeks.last < weeks.first ||
      weeks.last > table.weeks) {
    throw DomainError("compute_all: week range " +
                      std::to_string(weeks.first) + ":" +
                      std::to_string(weeks.last) +
                      " out of bounds for a " + std::to_string(table.weeks) +
                      "-week table");
  }

  const auto prepared = prepare_series(table, weeks, options);
  const int usable =
      static_cast<int>(std::count_if(prepared.begin(), prepared.end(),
                                     [](const auto& p) { return p.usable; }));
  if (usable < 2) {
    throw InsufficientDataError(
        "compute_all: fewer than 2 usable (non-constant) regions in the "
        "window");
  }

  const std::size_t n_pairs =
      static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  std::vector<double> scores(n_pairs,
                             std::numeric_limits<double>::quiet_NaN());

  // Flatten the computable (i, j) pairs; each worker owns a disjoint
  // slice, so results do not depend on the schedule.
  std::vector<std::pair<int, int>> todo;
  todo.reserve(n_pairs);
  std::vector<SkippedPair> skipped;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const bool ui = prepared[static_cast<std::size_t>(i - 1)].usable;
      const bool uj = prepared[static_cast<std::size_t>(j - 1)].usable;
      if (ui && uj) {
        todo.emplace_back(i, j);
      } else if (!ui && !uj) {
        skipped.push_back({i, j,
                           "regions " + std::to_string(i) + " and " +
                               std::to_string(j) + " constant in window"});
      } else {
        const int bad = ui ? j : i;
        skipped.push_back(
            {i, j, "region " + std::to_string(bad) + " constant in window"});
      }
    }
  }

  const auto score_pair = [&](int i, int j) {
    const auto& a = prepared[static_cast<std::size_t>(i - 1)];
    const auto& b = prepared[static_cast<std::size_t>(j - 1)];
    const CorrelationVector cv =
        ccf(a.values, b.values, a.stats, b.stats, options.lag_max, i, j);
    const std::size_t a0 = static_cast<std::size_t>(i - 1);
    const std::size_t b0 = static_cast<std::size_t>(j - 1);
    const std::size_t idx = a0 * (2 * static_cast<std::size_t>(n) - a0 - 1) / 2 +
                            (b0 - a0 - 1);
    scores[idx] = weighted_score(cv);
  };

  const std::size_t workers = std::clamp<std::size_t>(
      options.threads == 0 ? 1 : options.threads, 1, std::max<std::size_t>(todo.size(), 1));
  if (workers <= 1) {
    for (const auto& [i, j] : todo) {
      score_pair(i, j);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (todo.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(begin + chunk, todo.size());
      if (begin >= end) {
        break;
      }
      pool.emplace_back([&, begin, end] {
        for (std::size_t p = begin; p < end; ++p) {
          score_pair(todo[p].first, todo[p].second);
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  return ScoreMatrix(table.regions, options.lag_max, weeks, options.prewhiten,
                     std::move(scores), std::move(skipped));
}

std::vector<TopEntry> top_k(const ScoreMatrix& m, int region, int k) {
  const int n = m.n_regions();
  if (region < 1 || region > n) {
    throw DomainError("top_k: region " + std::to_string(region) +
                      " out of range 1.." + std::to_string(n));
  }
  if (k < 1 || k > n - 1) {
    throw DomainError("top_k: k " + std::to_string(k) +
                      " out of range 1.." + std::to_string(n - 1));
  }
  std::vector<TopEntry> entries;
  entries.reserve(static_cast<std::size_t>(n - 1));
  for (int j = 1; j <= n; ++j) {
    if (j == region) {
      continue;
    }
    const auto s = m.score(region, j);
    if (!s.has_value()) {
      continue;
    }
    const auto& rec = m.regions()[static_cast<std::size_t>(j - 1)];
    entries.push_back({j, rec.district, rec.province, *s});
  }
  std::sort(entries.begin(), entries.end(),
            [](const TopEntry& a, const TopEntry& b) {
              if (a.score != b.score) {
                return a.score > b.score;
              }
              return a.region < b.region;
            });
  if (static_cast<int>(entries.size()) > k) {
    entries.resize(static_cast<std::size_t>(k));
  }
  return entries;
}

SummaryStats summary_stats(const ScoreMatrix& m) {
  const auto scores = m.stored_scores();
  if (scores.empty()) {
    throw InsufficientDataError("summary_stats: matrix holds no scores");
  }
  return describe(scores);
}

WindowComparison compare_windows(const SurveillanceTable& table, WeekRange a,
                                 WeekRange b, const ComputeOptions& options) {
  ComputeOptions oa = options;
  oa.weeks = a;
  ComputeOptions ob = options;
  ob.weeks = b;
  ScoreMatrix ma = compute_all(table, oa);
  ScoreMatrix mb = compute_all(table, ob);

  std::vector<double> va;
  std::vector<double> vb;
  const auto& ra = ma.raw_scores();
  const auto& rb = mb.raw_scores();
  for (std::size_t p = 0; p < ra.size(); ++p) {
    if (!std::isnan(ra[p]) && !std::isnan(rb[p])) {
      va.push_back(ra[p]);
      vb.push_back(rb[p]);
    }
  }
  if (va.empty()) {
    throw InsufficientDataError(
        "compare_windows: no pair is usable in both windows");
  }
  const double stability = pearson(va, vb);
  return {std::move(ma), std::move(mb), stability};
}

void write_scores_csv(const ScoreMatrix& m, std::ostream& out) {
  out << "i,j,score\n";
  const int n = m.n_regions();
  char buf[48];
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const auto s = m.score(i, j);
      if (!s.has_value()) {
        continue;
      }
      std::snprintf(buf, sizeof(buf), "%.6g", *s);
      out << i << ',' << j << ',' << buf << '\n';
    }
  }
  for (const auto& sp : m.skipped_pairs()) {
    out << sp.i << ',' << sp.j << ",SKIPPED:" << sp.reason << '\n';
  }
}

}  // namespace survcor
