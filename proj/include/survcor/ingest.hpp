#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace survcor {

/// One reporting district. index is the 1-based file row order, which the
/// toolkit preserves everywhere: rows are never reordered.
struct RegionRecord {
  int index = 0;
  std::string district;
  std::string province;
};

/// Wide-format weekly count table: one row per region, one column per
/// week W1..WW. Absent cells mean "not reported", which is distinct from
/// a true zero count.
struct SurveillanceTable {
  std::vector<RegionRecord> regions;
  int weeks = 0;
  std::vector<std::vector<std::optional<std::int64_t>>> counts;

  int n_regions() const { return static_cast<int>(regions.size()); }

  /// Row of one region (1-based) as real-valued optionals.
  std::vector<std::optional<double>> row_values(int region_index) const;
};

/// Missing-data findings for one region. fatal means every cell of the
/// row is absent and the region cannot be analyzed.
struct RegionFinding {
  int region_index = 0;
  bool fatal = false;
  std::vector<int> missing_weeks;  // 1-based week ordinals
};

struct QualityReport {
  std::vector<RegionFinding> findings;

  bool has_fatal() const;
  std::size_t total_missing() const;
};

/// Positional week label, e.g. week_label(12) == "W12".
std::string week_label(int week);

/// Parse a wide-format weekly surveillance CSV document.
///
/// The header must read `index,district,province,W1,...,WW`. Data cells
/// are base-10 non-negative integers; empty or whitespace-only cells are
/// absent. Fields follow RFC 4180 quoting. Throws FormatError with
/// row/column coordinates on any structural problem.
SurveillanceTable parse_wide_csv(std::string_view text);

/// Read and parse a CSV file. Throws IoError when the file cannot be read.
SurveillanceTable load_wide_csv(const std::filesystem::path& path);

/// Report missing cells per region; never throws on data content.
QualityReport validate(const SurveillanceTable& table);

}  // namespace survcor
