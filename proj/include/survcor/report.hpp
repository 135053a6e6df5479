#pragma once

#include <span>
#include <string>

#include "survcor/anomaly.hpp"
#include "survcor/ingest.hpp"
#include "survcor/scorematrix.hpp"
#include "survcor/timeseries.hpp"
#include "survcor/xcorr.hpp"

namespace survcor {

/// Canvas and labeling parameters shared by all renderers. Width and
/// height must be at least 100 pixels.
struct PlotSpec {
  std::string title;
  int width = 960;
  int height = 640;
  std::string x_label;
  std::string y_label;
  std::string color_scheme = "green-brown";
};

/// All renderers return a self-contained SVG document as text. Output is
/// deterministic: fixed number formatting, no timestamps, no randomness.

/// N x N score heatmap. Positive scores shade toward green, negative
/// toward brown, scaled symmetrically to max(|min|, |max|); skipped pairs
/// are gray, the (undefined) diagonal light gray.
std::string render_heatmap(const ScoreMatrix& m, const PlotSpec& spec);

/// Equal-width histogram spanning [min, max] with a summary annotation
/// box (mean/sd/min/median/max).
std::string render_histogram(std::span<const double> scores, int bins,
                             const PlotSpec& spec);

inline std::string render_histogram(std::span<const double> scores,
                                    const PlotSpec& spec) {
  return render_histogram(scores, 30, spec);
}

/// Two-panel pair plot: both series overlaid on top, the correlation
/// vector as a stem plot below with dashed lines at +-threshold.
std::string render_pair_plot(const TimeSeries& x, const TimeSeries& y,
                             const CorrelationVector& cv, double threshold,
                             const PlotSpec& spec);

/// Two stacked count curves with alarm markers and translucent cluster
/// bands.
std::string render_alarm_timeline(const AlarmSeries& a, const AlarmSeries& b,
                                  std::span<const AlarmCluster> clusters_a,
                                  std::span<const AlarmCluster> clusters_b,
                                  const PlotSpec& spec);

/// Inverse of parse_wide_csv; present counts round-trip bit-exactly.
std::string serialize_wide_csv(const SurveillanceTable& table);

}  // namespace survcor
