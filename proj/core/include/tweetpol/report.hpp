#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tweetpol/evaluation.hpp"

namespace tweetpol {

/// Successful experiments to report on. Construction throws ArgumentError
/// when empty.
class ReportBundle {
 public:
  explicit ReportBundle(std::vector<ExperimentResult> results);
  /// Keeps only the entries that succeeded.
  static ReportBundle from_entries(const std::vector<MatrixEntry>& entries);

  const std::vector<ExperimentResult>& results() const noexcept { return results_; }

 private:
  std::vector<ExperimentResult> results_;
};

enum class TableFormat { Csv, Json, Markdown };

/// Throws ArgumentError for anything but "csv", "json", "markdown".
TableFormat parse_table_format(std::string_view name);

/// Tabular projection of one result; numbers are kept as display strings.
struct TableRow {
  std::string representation;
  std::string n;
  std::string prune_threshold;
  std::string method;
  bool balanced = false;
  std::string confidence_ratio;  // four decimals
  std::string duration_ms;       // empty when unknown

  bool operator==(const TableRow&) const = default;
};

/// Sorted by confidence ratio, highest first; ties keep input order.
std::vector<TableRow> table_rows(const ReportBundle& bundle);

std::string emit_table(const ReportBundle& bundle, TableFormat format);
/// Inverse of emit_table(bundle, TableFormat::Json).
std::vector<TableRow> parse_table_json(std::string_view document);

/// Chart geometry, kept separate from the SVG text so it can be checked directly.
struct RadialPoint {
  std::string family;
  std::string label;
  double confidence_ratio = 0.0;
  double angle = 0.0;   // radians, clockwise from 12 o'clock
  double radius = 0.0;  // confidence_ratio * max_radius
  double x = 0.0;       // relative to the centre
  double y = 0.0;
};

struct RadialLayout {
  double max_radius = 0.0;
  std::vector<std::string> families;  // sector order
  std::vector<RadialPoint> points;
};

/// Families get equal angular sectors in bow, ngram, graph order (absent ones
/// are skipped); spokes are spread evenly inside their sector.
RadialLayout radial_layout(const ReportBundle& bundle, double max_radius = 200.0);

std::string emit_radial_chart(const ReportBundle& bundle);

/// Optional per-entry durations written next to results.json.
nlohmann::json timings_document(const std::vector<MatrixEntry>& entries);
/// Copies durations into the matching entries by position. Throws
/// ArgumentError when the sizes disagree.
void apply_timings(std::vector<MatrixEntry>& entries, const nlohmann::json& timings);

}  // namespace tweetpol
