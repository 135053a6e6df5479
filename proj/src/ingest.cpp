#include "survcor/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "survcor/csv.hpp"
#include "survcor/errors.hpp"

namespace survcor {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      nl = text.size();
    }
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    lines.emplace_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::int64_t parse_count(std::string_view cell, int row, int week) {
  const std::string_view t = csv::trim(cell);
  const std::string where =
      "(row " + std::to_string(row) + ", " + week_label(week) + ")";
  std::int64_t value = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || end != t.data() + t.size()) {
    throw FormatError("parse: cell is not a base-10 integer at " + where +
                      ": '" + std::string(t) + "'");
  }
  if (value < 0) {
    throw FormatError("parse: negative count at " + where + ": " +
                      std::string(t));
  }
  return value;
}

}  // namespace

std::vector<std::optional<double>> SurveillanceTable::row_values(
    int region_index) const {
  if (region_index < 1 || region_index > n_regions()) {
    throw DomainError("row_values: region index " +
                      std::to_string(region_index) + " out of range 1.." +
                      std::to_string(n_regions()));
  }
  const auto& row = counts[static_cast<std::size_t>(region_index - 1)];
  std::vector<std::optional<double>> out;
  out.reserve(row.size());
  for (const auto& cell : row) {
    if (cell.has_value()) {
      out.emplace_back(static_cast<double>(*cell));
    } else {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

bool QualityReport::has_fatal() const {
  return std::any_of(findings.begin(), findings.end(),
                     [](const RegionFinding& f) { return f.fatal; });
}

std::size_t QualityReport::total_missing() const {
  std::size_t total = 0;
  for (const auto& f : findings) {
    total += f.missing_weeks.size();
  }
  return total;
}

std::string week_label(int week) { return "W" + std::to_string(week); }

SurveillanceTable parse_wide_csv(std::string_view text) {
  const auto lines = split_lines(csv::strip_bom(text));
  if (lines.empty()) {
    throw FormatError("parse: empty document");
  }

  const auto header = csv::split_record(lines.front());
  static constexpr const char* kFixed[3] = {"index", "district", "province"};
  if (header.size() < 4) {
    throw FormatError("parse: header needs index,district,province and at "
                      "least one week column");
  }
  for (int c = 0; c < 3; ++c) {
    if (csv::trim(header[static_cast<std::size_t>(c)]) != kFixed[c]) {
      throw FormatError("parse: header column " + std::to_string(c + 1) +
                        " must be '" + kFixed[c] + "', got '" +
                        header[static_cast<std::size_t>(c)] + "'");
    }
  }
  const int weeks = static_cast<int>(header.size()) - 3;
  for (int w = 1; w <= weeks; ++w) {
    const auto& got = header[static_cast<std::size_t>(w + 2)];
    if (std::string(csv::trim(got)) != week_label(w)) {
      throw FormatError("parse: header column " + std::to_string(w + 3) +
                        " must be '" + week_label(w) + "', got '" + got + "'");
    }
  }

  SurveillanceTable table;
  table.weeks = weeks;
  std::unordered_set<int> seen;
  int row = 0;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) {
      continue;  // tolerate a trailing blank line
    }
    ++row;
    const auto fields = csv::split_record(lines[li]);
    if (static_cast<int>(fields.size()) != weeks + 3) {
      throw FormatError("parse: row " + std::to_string(row) + " has " +
                        std::to_string(fields.size()) + " cells, expected " +
                        std::to_string(weeks + 3));
    }

    RegionRecord rec;
    const std::string_view index_text = csv::trim(fields[0]);
    const auto [end, ec] = std::from_chars(
        index_text.data(), index_text.data() + index_text.size(), rec.index);
    if (ec != std::errc{} || end != index_text.data() + index_text.size()) {
      throw FormatError("parse: row " + std::to_string(row) +
                        " has non-integer index '" + std::string(index_text) +
                        "'");
    }
    if (!seen.insert(rec.index).second) {
      throw FormatError("parse: duplicate region index " +
                        std::to_string(rec.index) + " at row " +
                        std::to_string(row));
    }
    if (rec.index != row) {
      throw FormatError("parse: region index " + std::to_string(rec.index) +
                        " at row " + std::to_string(row) +
                        " breaks the contiguous 1..N order");
    }
    rec.district = std::string(csv::trim(fields[1]));
    if (rec.district.empty()) {
      throw FormatError("parse: empty district name at row " +
                        std::to_string(row));
    }
    rec.province = std::string(csv::trim(fields[2]));

    std::vector<std::optional<std::int64_t>> cells;
    cells.reserve(static_cast<std::size_t>(weeks));
    for (int w = 1; w <= weeks; ++w) {
      const auto& cell = fields[static_cast<std::size_t>(w + 2)];
      if (csv::trim(cell).empty()) {
        cells.emplace_back(std::nullopt);
      } else {
        cells.emplace_back(parse_count(cell, row, w));
      }
    }
    table.regions.push_back(std::move(rec));
    table.counts.push_back(std::move(cells));
  }
  return table;
}

SurveillanceTable load_wide_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open input file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading input file: " + path.string());
  }
  return parse_wide_csv(buffer.str());
}

QualityReport validate(const SurveillanceTable& table) {
  QualityReport report;
  for (int i = 1; i <= table.n_regions(); ++i) {
    const auto& row = table.counts[static_cast<std::size_t>(i - 1)];
    RegionFinding finding;
    finding.region_index = i;
    for (int w = 1; w <= table.weeks; ++w) {
      if (!row[static_cast<std::size_t>(w - 1)].has_value()) {
        finding.missing_weeks.push_back(w);
      }
    }
    if (finding.missing_weeks.empty()) {
      continue;
    }
    finding.fatal = static_cast<int>(finding.missing_weeks.size()) == table.weeks;
    report.findings.push_back(std::move(finding));
  }
  return report;
}

}  // namespace survcor
