#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "survcor/ingest.hpp"
#include "survcor/stats.hpp"
#include "survcor/xcorr.hpp"

namespace survcor {

/// 1-based inclusive week window.
struct WeekRange {
  int first = 1;
  int last = 1;

  int length() const { return last - first + 1; }
  bool operator==(const WeekRange&) const = default;
};

/// Pair left unscored because at least one side is constant in the
/// analysis window.
struct SkippedPair {
  int i = 0;
  int j = 0;
  std::string reason;
};

struct ComputeOptions {
  int lag_max = 5;
  std::optional<WeekRange> weeks;  // default: the full record
  bool prewhiten = false;          // first-difference before scoring
  unsigned threads = 1;
};

/// Symmetric pairwise weighted-score matrix. Only the upper triangle
/// (i < j) is stored; the accessor mirrors it, and the diagonal does not
/// exist. Skipped (degenerate) pairs hold NaN in raw storage and are
/// listed with a reason.
class ScoreMatrix {
 public:
  ScoreMatrix(std::vector<RegionRecord> regions, int lag_max, WeekRange weeks,
              bool prewhitened, std::vector<double> scores,
              std::vector<SkippedPair> skipped);

  int n_regions() const { return static_cast<int>(regions_.size()); }
  int lag_max() const { return lag_max_; }
  WeekRange week_range() const { return weeks_; }
  bool prewhitened() const { return prewhitened_; }

  /// Score of the unordered pair {i, j} (1-based, i != j); nullopt when
  /// the pair was skipped.
  std::optional<double> score(int i, int j) const;

  /// Upper-triangle storage in pair-index order, NaN for skipped pairs.
  const std::vector<double>& raw_scores() const { return scores_; }

  /// All stored scores, in pair-index order, without the NaN holes.
  std::vector<double> stored_scores() const;

  const std::vector<SkippedPair>& skipped_pairs() const { return skipped_; }
  const std::vector<RegionRecord>& regions() const { return regions_; }

  /// Position of pair {i, j}, i < j, inside raw_scores().
  std::size_t pair_index(int i, int j) const;

 private:
  std::vector<RegionRecord> regions_;
  int lag_max_ = 5;
  WeekRange weeks_{};
  bool prewhitened_ = false;
  std::vector<double> scores_;
  std::vector<SkippedPair> skipped_;
};

/// Score every unordered region pair over the analysis window.
///
/// Each region row is interpolated over the full record, sliced to the
/// window, optionally first-differenced, and scored against every other
/// region with weighted_score(ccf(...)). Pair computations are pure, so
/// the result is bit-identical for any thread count.
ScoreMatrix compute_all(const SurveillanceTable& table,
                        const ComputeOptions& options = {});

struct TopEntry {
  int region = 0;
  std::string district;
  std::string province;
  double score = 0.0;
};

/// The k best-correlated partners of a region, best first; ties break
/// toward the smaller partner index.
std::vector<TopEntry> top_k(const ScoreMatrix& m, int region, int k = 5);

/// Summary of all stored scores (n-1 sd, midpoint median).
SummaryStats summary_stats(const ScoreMatrix& m);

struct WindowComparison {
  ScoreMatrix matrix_a;
  ScoreMatrix matrix_b;
  double stability = 0.0;  // Pearson over the common upper triangles
};

/// Score the same table over two windows and correlate the vectorized
/// upper triangles restricted to pairs usable in both.
WindowComparison compare_windows(const SurveillanceTable& table, WeekRange a,
                                 WeekRange b,
                                 const ComputeOptions& options = {});

/// CSV export: header `i,j,score` with 6 significant digits, skipped
/// pairs appended as `i,j,SKIPPED:<reason>`.
void write_scores_csv(const ScoreMatrix& m, std::ostream& out);

}  // namespace survcor
