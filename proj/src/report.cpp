#include "survcor/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "survcor/csv.hpp"
#include "survcor/errors.hpp"
#include "survcor/stats.hpp"

namespace survcor {

namespace {

std::string fnum(double v, int prec = 2) {
  char buf[64];
  if (v == 0.0) {
    v = 0.0;  // collapse negative zero
  }
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

std::string gnum(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void check_spec(const PlotSpec& spec) {
  if (spec.width < 100 || spec.height < 100) {
    throw DomainError("plot: canvas must be at least 100x100 pixels");
  }
}

struct Rgb {
  int r = 0;
  int g = 0;
  int b = 0;
};

std::string hex(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

Rgb lerp_from_white(const Rgb& to, double t) {
  t = std::clamp(t, 0.0, 1.0);
  const auto mix = [t](int target) {
    return static_cast<int>(std::lround(255.0 + (target - 255.0) * t));
  };
  return {mix(to.r), mix(to.g), mix(to.b)};
}

constexpr Rgb kGreen{0, 104, 55};     // positive endpoint
constexpr Rgb kBrown{140, 81, 10};    // negative endpoint
constexpr const char* kSkippedGray = "#b0b0b0";
constexpr const char* kDiagonalGray = "#e0e0e0";
constexpr const char* kSeriesBlue = "#4682b4";
constexpr const char* kSeriesOrange = "#ff8c00";
constexpr const char* kThresholdBlue = "#1f77b4";
constexpr const char* kAlarmRed = "#d62728";
constexpr const char* kClusterYellow = "#ffd700";

std::string score_color(double score, double vmax) {
  if (score >= 0.0) {
    return hex(lerp_from_white(kGreen, score / vmax));
  }
  return hex(lerp_from_white(kBrown, -score / vmax));
}

class SvgDoc {
 public:
  SvgDoc(int width, int height) {
    buf_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
         << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
         << height << "\">\n";
    buf_ << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\""
         << height << "\" fill=\"#ffffff\"/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& extra = {}) {
    buf_ << "<rect x=\"" << fnum(x) << "\" y=\"" << fnum(y) << "\" width=\""
         << fnum(w) << "\" height=\"" << fnum(h) << "\" fill=\"" << fill
         << "\"" << extra << "/>\n";
  }

  void line(double x1, double y1, double x2, double y2,
            const std::string& stroke, const std::string& extra = {}) {
    buf_ << "<line x1=\"" << fnum(x1) << "\" y1=\"" << fnum(y1) << "\" x2=\""
         << fnum(x2) << "\" y2=\"" << fnum(y2) << "\" stroke=\"" << stroke
         << "\"" << extra << "/>\n";
  }

  void circle(double cx, double cy, double r, const std::string& fill) {
    buf_ << "<circle cx=\"" << fnum(cx) << "\" cy=\"" << fnum(cy)
         << "\" r=\"" << fnum(r) << "\" fill=\"" << fill << "\"/>\n";
  }

  void polyline(const std::string& points, const std::string& stroke) {
    buf_ << "<polyline points=\"" << points
         << "\" fill=\"none\" stroke=\"" << stroke
         << "\" stroke-width=\"1.5\"/>\n";
  }

  void text(double x, double y, const std::string& content, int size = 12,
            const std::string& anchor = "start",
            const std::string& extra = {}) {
    buf_ << "<text x=\"" << fnum(x) << "\" y=\"" << fnum(y)
         << "\" font-family=\"sans-serif\" font-size=\"" << size
         << "\" text-anchor=\"" << anchor << "\"" << extra << ">"
         << xml_escape(content) << "</text>\n";
  }

  std::string close() {
    buf_ << "</svg>\n";
    return buf_.str();
  }

 private:
  std::ostringstream buf_;
};

struct Frame {
  double left = 0;
  double top = 0;
  double width = 0;
  double height = 0;

  double bottom() const { return top + height; }
  double right() const { return left + width; }
};

void draw_frame(SvgDoc& svg, const Frame& f) {
  svg.rect(f.left, f.top, f.width, f.height, "none",
           " stroke=\"#333333\" stroke-width=\"1\"");
}

void draw_title(SvgDoc& svg, const PlotSpec& spec) {
  if (!spec.title.empty()) {
    svg.text(spec.width / 2.0, 24, spec.title, 15, "middle");
  }
}

}  // namespace

std::string render_heatmap(const ScoreMatrix& m, const PlotSpec& spec) {
  check_spec(spec);
  const int n = m.n_regions();

  double vmax = 0.0;
  for (const double s : m.stored_scores()) {
    vmax = std::max(vmax, std::abs(s));
  }
  if (vmax == 0.0) {
    vmax = 1.0;
  }

  SvgDoc svg(spec.width, spec.height);
  draw_title(svg, spec);
  const Frame f{60.0, 40.0, spec.width - 80.0, spec.height - 100.0};
  const double cw = f.width / n;
  const double ch = f.height / n;

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      std::string fill;
      if (i == j) {
        fill = kDiagonalGray;
      } else {
        const auto s = m.score(i, j);
        fill = s.has_value() ? score_color(*s, vmax) : kSkippedGray;
      }
      svg.rect(f.left + (j - 1) * cw, f.top + (i - 1) * ch, cw, ch, fill);
    }
  }
  draw_frame(svg, f);

  const int step = std::max(1, (n + 11) / 12);
  for (int idx = 1; idx <= n; idx += step) {
    const double cx = f.left + (idx - 0.5) * cw;
    const double cy = f.top + (idx - 0.5) * ch;
    svg.text(cx, f.bottom() + 16, std::to_string(idx), 10, "middle");
    svg.text(f.left - 6, cy + 3, std::to_string(idx), 10, "end");
  }
  const std::string x_label =
      spec.x_label.empty() ? "region index" : spec.x_label;
  const std::string y_label =
      spec.y_label.empty() ? "region index" : spec.y_label;
  svg.text(f.left + f.width / 2, f.bottom() + 40, x_label, 12, "middle");
  svg.text(18, f.top + f.height / 2, y_label, 12, "middle",
           " transform=\"rotate(-90 18 " + fnum(f.top + f.height / 2) +
               ")\"");

  // Scale note in place of a color bar.
  svg.text(f.right(), f.bottom() + 40,
           "scale: -" + fnum(vmax) + " (brown) .. +" + fnum(vmax) +
               " (green), gray = no score",
           10, "end");
  return svg.close();
}

std::string render_histogram(std::span<const double> scores, int bins,
                             const PlotSpec& spec) {
  check_spec(spec);
  if (scores.empty()) {
    throw InsufficientDataError("render_histogram: no scores");
  }
  if (bins < 1) {
    throw DomainError("render_histogram: need at least one bin");
  }

  const SummaryStats stats = describe(scores);
  double lo = stats.min;
  double hi = stats.max;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double bin_width = (hi - lo) / bins;
  std::vector<int> counts(static_cast<std::size_t>(bins), 0);
  for (const double v : scores) {
    auto idx = static_cast<std::size_t>((v - lo) / bin_width);
    idx = std::min(idx, static_cast<std::size_t>(bins - 1));
    counts[idx] += 1;
  }
  const int peak = *std::max_element(counts.begin(), counts.end());

  SvgDoc svg(spec.width, spec.height);
  draw_title(svg, spec);
  const Frame f{60.0, 40.0, spec.width - 80.0, spec.height - 100.0};
  const double bw = f.width / bins;
  for (int b = 0; b < bins; ++b) {
    const int c = counts[static_cast<std::size_t>(b)];
    if (c == 0) {
      continue;
    }
    const double h = f.height * c / peak;
    svg.rect(f.left + b * bw, f.bottom() - h, bw, h, kSeriesBlue,
             " stroke=\"#2b4f6e\" stroke-width=\"0.5\"");
  }
  draw_frame(svg, f);

  for (const double tick : {lo, (lo + hi) / 2.0, hi}) {
    const double x = f.left + (tick - lo) / (hi - lo) * f.width;
    svg.text(x, f.bottom() + 16, gnum(tick), 10, "middle");
  }
  svg.text(f.left - 6, f.bottom() + 3, "0", 10, "end");
  svg.text(f.left - 6, f.top + 10, std::to_string(peak), 10, "end");
  const std::string x_label = spec.x_label.empty() ? "score" : spec.x_label;
  const std::string y_label = spec.y_label.empty() ? "pairs" : spec.y_label;
  svg.text(f.left + f.width / 2, f.bottom() + 40, x_label, 12, "middle");
  svg.text(18, f.top + f.height / 2, y_label, 12, "middle",
           " transform=\"rotate(-90 18 " + fnum(f.top + f.height / 2) +
               ")\"");

  svg.text(f.right() - 8, f.top + 16,
           "Mean=" + fnum(stats.mean) + ", SD=" + fnum(stats.sd), 11, "end");
  svg.text(f.right() - 8, f.top + 32,
           "Min=" + fnum(stats.min) + ", Median=" + fnum(stats.median) +
               ", Max=" + fnum(stats.max),
           11, "end");
  return svg.close();
}

namespace {

std::string legend_name(const TimeSeries& ts, const char* fallback) {
  if (ts.region_index > 0) {
    return "R" + std::to_string(ts.region_index);
  }
  return fallback;
}

}  // namespace

std::string render_pair_plot(const TimeSeries& x, const TimeSeries& y,
                             const CorrelationVector& cv, double threshold,
                             const PlotSpec& spec) {
  check_spec(spec);
  if (x.size() != y.size() || x.size() != cv.n) {
    throw DomainError("render_pair_plot: series and correlation vector have "
                      "inconsistent lengths");
  }
  const int n = x.size();

  SvgDoc svg(spec.width, spec.height);
  draw_title(svg, spec);
  const double gap = 46.0;
  const double panel_h = (spec.height - 40.0 - 50.0 - gap) / 2.0;
  const Frame top{60.0, 40.0, spec.width - 80.0, panel_h};
  const Frame bot{60.0, 40.0 + panel_h + gap, spec.width - 80.0, panel_h};

  // Upper panel: the two series.
  double lo = x.values[0];
  double hi = x.values[0];
  for (const auto* series : {&x, &y}) {
    for (const double v : series->values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (lo == hi) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = (hi - lo) * 0.05;
  lo -= pad;
  hi += pad;

  const auto sx = [&](int idx) {
    return n > 1 ? top.left + top.width * idx / (n - 1) : top.left;
  };
  const auto sy = [&](double v) {
    return top.bottom() - (v - lo) / (hi - lo) * top.height;
  };
  for (const auto& [series, color] :
       {std::pair{&x, kSeriesBlue}, std::pair{&y, kSeriesOrange}}) {
    std::string points;
    for (int idx = 0; idx < n; ++idx) {
      points += fnum(sx(idx)) + "," +
                fnum(sy(series->values[static_cast<std::size_t>(idx)])) + " ";
    }
    svg.polyline(points, color);
  }
  draw_frame(svg, top);
  svg.text(top.left + 8, top.top + 14, legend_name(x, "series A"), 11,
           "start", std::string(" fill=\"") + kSeriesBlue + "\"");
  svg.text(top.left + 8, top.top + 28, legend_name(y, "series B"), 11,
           "start", std::string(" fill=\"") + kSeriesOrange + "\"");
  for (const int week : {x.start_week, x.start_week + n - 1}) {
    const double px = sx(week - x.start_week);
    svg.text(px, top.bottom() + 14, week_label(week), 10, "middle");
  }
  svg.text(top.left - 6, top.top + 10, gnum(hi), 10, "end");
  svg.text(top.left - 6, top.bottom() + 3, gnum(lo), 10, "end");
  const std::string count_label = x.differenced
                                      ? "weekly count (differenced)"
                                      : "weekly count";
  svg.text(18, top.top + top.height / 2,
           spec.y_label.empty() ? count_label : spec.y_label, 11, "middle",
           " transform=\"rotate(-90 18 " + fnum(top.top + top.height / 2) +
               ")\"");

  // Lower panel: correlation stems over the lag window.
  const int lags = 2 * cv.lag_max + 1;
  const auto bx = [&](int k) {
    return bot.left + bot.width * (k + cv.lag_max + 0.5) / lags;
  };
  const auto by = [&](double v) {
    return bot.bottom() - (v + 1.1) / 2.2 * bot.height;
  };
  svg.line(bot.left, by(0.0), bot.right(), by(0.0), "#888888");
  for (const double t : {threshold, -threshold}) {
    svg.line(bot.left, by(t), bot.right(), by(t), kThresholdBlue,
             " stroke-dasharray=\"6 4\"");
  }
  for (int k = -cv.lag_max; k <= cv.lag_max; ++k) {
    const double v = cv.at_lag(k);
    svg.line(bx(k), by(0.0), bx(k), by(v), "#333333",
             " stroke-width=\"1.5\" class=\"stem\"");
    svg.circle(bx(k), by(v), 3.0, "#333333");
  }
  draw_frame(svg, bot);
  for (int k = -cv.lag_max; k <= cv.lag_max; ++k) {
    svg.text(bx(k), bot.bottom() + 14, std::to_string(k), 10, "middle");
  }
  for (const double v : {-1.0, 0.0, 1.0}) {
    svg.text(bot.left - 6, by(v) + 3, fnum(v, 1), 10, "end");
  }
  svg.text(bot.left + bot.width / 2, bot.bottom() + 32,
           spec.x_label.empty() ? "lag (weeks)" : spec.x_label, 12, "middle");
  svg.text(18, bot.top + bot.height / 2, "correlation", 11, "middle",
           " transform=\"rotate(-90 18 " + fnum(bot.top + bot.height / 2) +
               ")\"");
  return svg.close();
}

std::string render_alarm_timeline(const AlarmSeries& a, const AlarmSeries& b,
                                  std::span<const AlarmCluster> clusters_a,
                                  std::span<const AlarmCluster> clusters_b,
                                  const PlotSpec& spec) {
  check_spec(spec);
  if (a.start_week != b.start_week || a.n_weeks != b.n_weeks ||
      a.baseline != b.baseline) {
    throw DomainError(
        "render_alarm_timeline: alarm series cover different week ranges");
  }
  if (a.entries.empty()) {
    throw InsufficientDataError("render_alarm_timeline: no evaluable weeks");
  }

  SvgDoc svg(spec.width, spec.height);
  draw_title(svg, spec);
  const double gap = 40.0;
  const double panel_h = (spec.height - 40.0 - 50.0 - gap) / 2.0;
  const int week0 = a.entries.front().week;
  const int week1 = a.entries.back().week;
  const int span = std::max(week1 - week0, 1);

  const auto draw_panel = [&](const AlarmSeries& s,
                              std::span<const AlarmCluster> clusters,
                              const Frame& f) {
    double lo = s.entries.front().observed;
    double hi = lo;
    for (const auto& e : s.entries) {
      lo = std::min(lo, e.observed);
      hi = std::max(hi, e.observed);
    }
    if (lo == hi) {
      lo -= 1.0;
      hi += 1.0;
    }
    const auto px = [&](double week) {
      return f.left + (week - week0) / span * f.width;
    };
    const auto py = [&](double v) {
      return f.bottom() - (v - lo) / (hi - lo) * f.height;
    };
    for (const auto& c : clusters) {
      const double x0 = std::max(px(c.start_week - 0.5), f.left);
      const double x1 = std::min(px(c.end_week + 0.5), f.right());
      svg.rect(x0, f.top, x1 - x0, f.height, kClusterYellow,
               " fill-opacity=\"0.35\" class=\"cluster\"");
    }
    std::string points;
    for (const auto& e : s.entries) {
      points += fnum(px(e.week)) + "," + fnum(py(e.observed)) + " ";
    }
    svg.polyline(points, kSeriesBlue);
    for (const auto& e : s.entries) {
      if (e.alarm) {
        svg.circle(px(e.week), py(e.observed), 3.0, kAlarmRed);
      }
    }
    draw_frame(svg, f);
    svg.text(f.left + 8, f.top + 14,
             s.region_index > 0 ? "R" + std::to_string(s.region_index)
                                : "series",
             11, "start");
    svg.text(f.left - 6, f.top + 10, gnum(hi), 10, "end");
    svg.text(f.left - 6, f.bottom() + 3, gnum(lo), 10, "end");
    for (const int week : {week0, week1}) {
      svg.text(px(week), f.bottom() + 14, week_label(week), 10, "middle");
    }
  };

  const Frame top{60.0, 40.0, spec.width - 80.0, panel_h};
  const Frame bot{60.0, 40.0 + panel_h + gap, spec.width - 80.0, panel_h};
  draw_panel(a, clusters_a, top);
  draw_panel(b, clusters_b, bot);
  svg.text(top.left + top.width / 2, bot.bottom() + 32,
           spec.x_label.empty() ? "week" : spec.x_label, 12, "middle");
  return svg.close();
}

std::string serialize_wide_csv(const SurveillanceTable& table) {
  std::ostringstream out;
  out << "index,district,province";
  for (int w = 1; w <= table.weeks; ++w) {
    out << ',' << week_label(w);
  }
  out << '\n';
  for (int i = 1; i <= table.n_regions(); ++i) {
    const auto& rec = table.regions[static_cast<std::size_t>(i - 1)];
    out << rec.index << ',' << csv::quote_field(rec.district) << ','
        << csv::quote_field(rec.province);
    for (const auto& cell : table.counts[static_cast<std::size_t>(i - 1)]) {
      out << ',';
      if (cell.has_value()) {
        out << *cell;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace survcor
