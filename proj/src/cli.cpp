#include "survcor/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "survcor/anomaly.hpp"
#include "survcor/csv.hpp"
#include "survcor/errors.hpp"
#include "survcor/ingest.hpp"
#include "survcor/report.hpp"
#include "survcor/scorematrix.hpp"
#include "survcor/timeseries.hpp"
#include "survcor/xcorr.hpp"

namespace survcor {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string input_path;
  std::optional<WeekRange> weeks;
  int lag_max = 5;
  double alpha = 0.05;
  int baseline = 7;
  int k = 5;
  int max_gap = 2;
  int tolerance = 1;
  bool prewhiten = false;
  unsigned threads = 1;
  std::string output_dir = "survcor_out";
};

int parse_int(std::string_view text, const std::string& what) {
  int value = 0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw DomainError(what + ": '" + std::string(text) +
                      "' is not an integer");
  }
  return value;
}

WeekRange parse_week_range(const std::string& text) {
  const auto pos = text.find(':');
  if (pos == std::string::npos) {
    throw DomainError("week range: expected A:B, got '" + text + "'");
  }
  WeekRange range;
  range.first = parse_int(std::string_view(text).substr(0, pos), "week range");
  range.last = parse_int(std::string_view(text).substr(pos + 1), "week range");
  if (range.first < 1 || range.last < range.first) {
    throw DomainError("week range: need 1 <= A <= B, got '" + text + "'");
  }
  return range;
}

std::string fixed(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open output file: " + path.string());
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw IoError("failed writing output file: " + path.string());
  }
}

fs::path ensure_output_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory: " + dir.string());
  }
  return dir;
}

SurveillanceTable load_validated(const RunConfig& cfg) {
  SurveillanceTable table = load_wide_csv(cfg.input_path);
  const QualityReport report = validate(table);
  for (const auto& finding : report.findings) {
    if (finding.fatal) {
      throw InsufficientDataError(
          "input: region " + std::to_string(finding.region_index) +
          " has no reported counts at all");
    }
  }
  return table;
}

ComputeOptions compute_options(const RunConfig& cfg) {
  ComputeOptions opts;
  opts.lag_max = cfg.lag_max;
  opts.weeks = cfg.weeks;
  opts.prewhiten = cfg.prewhiten;
  opts.threads = cfg.threads;
  return opts;
}

/// Interpolated and windowed series for one region. Differencing applies
/// only on the scoring path.
TimeSeries analysis_series(const SurveillanceTable& table, int region,
                           const RunConfig& cfg, bool for_scoring) {
  TimeSeries ts = region_series(table, region);
  const WeekRange weeks = cfg.weeks.value_or(WeekRange{1, table.weeks});
  ts = slice_weeks(ts, weeks.first, weeks.last, cfg.lag_max);
  if (for_scoring && cfg.prewhiten) {
    ts = difference(ts);
  }
  return ts;
}

std::string window_note(const ScoreMatrix& m) {
  std::string note = "weeks " + std::to_string(m.week_range().first) + "-" +
                     std::to_string(m.week_range().last);
  if (m.prewhitened()) {
    note += ", differenced";
  }
  return note;
}

std::string pair_label(const TopEntry& e) {
  // Table layout: "<i> <district>,<province>; <j> <district>,<province>".
  return std::to_string(e.region) + " " + e.district + "," + e.province;
}

int cmd_scores(const RunConfig& cfg, std::ostream& out) {
  const SurveillanceTable table = load_validated(cfg);
  const ScoreMatrix matrix = compute_all(table, compute_options(cfg));
  const fs::path dir = ensure_output_dir(cfg);

  std::ostringstream csv_text;
  write_scores_csv(matrix, csv_text);
  write_file(dir / "scores.csv", csv_text.str());

  PlotSpec heat;
  heat.title = "Pairwise correlation scores (" + window_note(matrix) + ")";
  heat.width = 1000;
  heat.height = 1000;
  write_file(dir / "heatmap.svg", render_heatmap(matrix, heat));

  PlotSpec hist;
  hist.title = "Score distribution (" + window_note(matrix) + ")";
  hist.width = 900;
  hist.height = 600;
  const auto scores = matrix.stored_scores();
  write_file(dir / "histogram.svg", render_histogram(scores, hist));

  const SummaryStats stats = summary_stats(matrix);
  out << "scores=" << scores.size()
      << " skipped=" << matrix.skipped_pairs().size() << "\n";
  out << "Mean=" << fixed(stats.mean, 2) << ", SD=" << fixed(stats.sd, 2)
      << "; Min=" << fixed(stats.min, 2)
      << ", Median=" << fixed(stats.median, 2)
      << ", Max=" << fixed(stats.max, 2) << "\n";
  return 0;
}

int cmd_topk(const RunConfig& cfg, int region, std::ostream& out) {
  const SurveillanceTable table = load_validated(cfg);
  const ScoreMatrix matrix = compute_all(table, compute_options(cfg));
  const auto entries = top_k(matrix, region, cfg.k);
  const fs::path dir = ensure_output_dir(cfg);

  const auto& home = matrix.regions()[static_cast<std::size_t>(region - 1)];
  const std::string home_label = std::to_string(region) + " " +
                                 home.district + "," + home.province;

  std::ostringstream table_text;
  table_text << "Region Pairs,Correlation Scores\n";
  for (const auto& e : entries) {
    table_text << csv::quote_field(home_label + "; " + pair_label(e)) << ','
               << fixed(e.score, 2) << '\n';
  }
  write_file(dir / ("topk_" + std::to_string(region) + ".csv"),
             table_text.str());
  out << table_text.str();

  const TimeSeries x = analysis_series(table, region, cfg, true);
  for (const auto& e : entries) {
    const TimeSeries y = analysis_series(table, e.region, cfg, true);
    const CorrelationVector cv = ccf(x, y, cfg.lag_max);
    const double threshold =
        significance_threshold(static_cast<double>(cv.n), cfg.alpha);
    PlotSpec spec;
    spec.title = "R" + std::to_string(region) + " vs R" +
                 std::to_string(e.region) + " (" + window_note(matrix) + ")";
    spec.width = 960;
    spec.height = 760;
    write_file(dir / ("pair_" + std::to_string(region) + "_" +
                      std::to_string(e.region) + ".svg"),
               render_pair_plot(x, y, cv, threshold, spec));
  }
  return 0;
}

int cmd_alarms(const RunConfig& cfg, const std::vector<int>& regions,
               std::ostream& out) {
  if (regions.empty()) {
    throw DomainError("alarms: no regions given");
  }
  const SurveillanceTable table = load_validated(cfg);
  const fs::path dir = ensure_output_dir(cfg);

  std::vector<AlarmSeries> alarm_series;
  std::vector<std::vector<AlarmCluster>> clusters;
  for (const int region : regions) {
    if (region < 1 || region > table.n_regions()) {
      throw DomainError("alarms: region " + std::to_string(region) +
                        " out of range 1.." +
                        std::to_string(table.n_regions()));
    }
    const TimeSeries ts = analysis_series(table, region, cfg, false);
    AlarmSeries alarms = ears_c(ts, cfg.baseline, cfg.alpha);
    std::ostringstream csv_text;
    write_alarm_csv(alarms, csv_text);
    write_file(dir / ("alarms_" + std::to_string(region) + ".csv"),
               csv_text.str());
    clusters.push_back(cluster_alarms(alarms, cfg.max_gap));
    out << "region " << region << ": " << alarms.alarm_weeks().size()
        << " alarms in " << clusters.back().size() << " clusters\n";
    alarm_series.push_back(std::move(alarms));
  }

  if (regions.size() < 2) {
    return 0;
  }
  std::ostringstream jsonl;
  for (std::size_t p = 0; p + 1 < regions.size(); ++p) {
    const AlarmSeries& a = alarm_series[p];
    const AlarmSeries& b = alarm_series[p + 1];
    const OverlapReport overlap = alarm_overlap(a, b, cfg.tolerance);
    nlohmann::json record;
    record["region_a"] = regions[p];
    record["region_b"] = regions[p + 1];
    record["alarms_a"] = overlap.alarms_a;
    record["alarms_b"] = overlap.alarms_b;
    record["matched_a"] = overlap.matched_a;
    record["matched_b"] = overlap.matched_b;
    record["jaccard"] = overlap.jaccard;
    if (overlap.mean_lead.has_value()) {
      record["mean_lead"] = *overlap.mean_lead;
    } else {
      record["mean_lead"] = nullptr;
    }
    record["tolerance"] = cfg.tolerance;
    jsonl << record.dump() << '\n';
    out << "overlap " << regions[p] << "-" << regions[p + 1]
        << ": jaccard=" << fixed(overlap.jaccard, 4) << "\n";

    PlotSpec spec;
    spec.title = "Alarms R" + std::to_string(regions[p]) + " vs R" +
                 std::to_string(regions[p + 1]);
    spec.width = 1000;
    spec.height = 640;
    write_file(dir / ("timeline_" + std::to_string(regions[p]) + "_" +
                      std::to_string(regions[p + 1]) + ".svg"),
               render_alarm_timeline(a, b, clusters[p], clusters[p + 1],
                                     spec));
  }
  write_file(dir / "overlaps.jsonl", jsonl.str());
  return 0;
}

int cmd_stability(const RunConfig& cfg, const WeekRange& window_a,
                  const WeekRange& window_b, std::ostream& out) {
  const SurveillanceTable table = load_validated(cfg);
  ComputeOptions opts = compute_options(cfg);
  opts.weeks.reset();
  const WindowComparison cmp =
      compare_windows(table, window_a, window_b, opts);
  const fs::path dir = ensure_output_dir(cfg);
  for (const auto& [matrix, name] :
       {std::pair{&cmp.matrix_a, "heatmap_a.svg"},
        std::pair{&cmp.matrix_b, "heatmap_b.svg"}}) {
    PlotSpec spec;
    spec.title = "Pairwise correlation scores (" + window_note(*matrix) + ")";
    spec.width = 1000;
    spec.height = 1000;
    write_file(dir / name, render_heatmap(*matrix, spec));
  }
  out << fixed(cmp.stability, 4) << "\n";
  return 0;
}

void add_common_options(CLI::App* cmd, RunConfig& cfg,
                        std::string& weeks_text) {
  cmd->add_option("--input", cfg.input_path, "wide-format weekly CSV")
      ->required();
  cmd->add_option("--weeks", weeks_text, "analysis window A:B (1-based)");
  cmd->add_option("--lag", cfg.lag_max, "lag window half-width in weeks");
  cmd->add_option("--alpha", cfg.alpha, "two-sided significance level");
  cmd->add_option("--baseline", cfg.baseline, "EARS-C look-back in weeks");
  cmd->add_option("--k", cfg.k, "partners per top-k query");
  cmd->add_option("--gap", cfg.max_gap, "max in-cluster alarm gap in weeks");
  cmd->add_option("--tolerance", cfg.tolerance,
                  "alarm matching tolerance in weeks");
  cmd->add_flag("--prewhiten", cfg.prewhiten,
                "first-difference series before scoring");
  cmd->add_option("--threads", cfg.threads, "worker cap for pair scoring");
  cmd->add_option("--out", cfg.output_dir, "output directory");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"survcor: pairwise lagged correlation and outbreak-alarm "
               "analysis of weekly surveillance tables"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string weeks_text;
  int topk_region = 0;
  std::vector<int> alarm_regions;
  std::string window_a_text;
  std::string window_b_text;

  CLI::App* scores =
      app.add_subcommand("scores", "score matrix, heatmap, histogram");
  add_common_options(scores, cfg, weeks_text);

  CLI::App* topk =
      app.add_subcommand("topk", "best-correlated partners of one region");
  add_common_options(topk, cfg, weeks_text);
  topk->add_option("--region", topk_region, "1-based region index")
      ->required();

  CLI::App* alarms =
      app.add_subcommand("alarms", "EARS-C alarms, clusters, overlaps");
  add_common_options(alarms, cfg, weeks_text);
  alarms
      ->add_option("--regions", alarm_regions,
                   "comma-separated 1-based region indices")
      ->required()
      ->delimiter(',');

  CLI::App* stability =
      app.add_subcommand("stability", "compare two analysis windows");
  add_common_options(stability, cfg, weeks_text);
  stability->add_option("--window-a", window_a_text, "first window A:B")
      ->required();
  stability->add_option("--window-b", window_b_text, "second window A:B")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const CLI::ParseError& e) {
    err << "survcor: usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!weeks_text.empty()) {
      cfg.weeks = parse_week_range(weeks_text);
    }
    if (scores->parsed()) {
      return cmd_scores(cfg, out);
    }
    if (topk->parsed()) {
      return cmd_topk(cfg, topk_region, out);
    }
    if (alarms->parsed()) {
      return cmd_alarms(cfg, alarm_regions, out);
    }
    return cmd_stability(cfg, parse_week_range(window_a_text),
                         parse_week_range(window_b_text), out);
  } catch (const Error& e) {
    err << "survcor: data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "survcor: internal error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("survcor");
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace survcor
