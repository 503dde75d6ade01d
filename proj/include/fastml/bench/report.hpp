#ifndef FASTML_BENCH_REPORT_HPP
#define FASTML_BENCH_REPORT_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fastml/bench/runner.hpp"

namespace fastml::bench {

enum class ReportFormat { Json, Csv, Table };

std::optional<ReportFormat> parse_format(std::string_view text) noexcept;

// JSON: a top-level array of objects with keys dataset, model, config,
// timings_ms, training_time_ms, metrics, epochs_run, complexity, seed,
// metric_split and (on failure) error.
nlohmann::json report_to_json(const BenchReport& report);
BenchReport report_from_json(const nlohmann::json& j);

std::string render_json(std::span<const BenchReport> reports);
/// One row per (dataset, model); config.* and metrics.* columns are the union
/// over all reports, timings_ms is ';'-joined. Numbers use the shortest
/// round-trip form.
std::string render_csv(std::span<const BenchReport> reports);
/// Fixed-width text laid out like a metric comparison table: one line per
/// evaluation metric with accuracy shown as a percentage.
std::string render_table(std::span<const BenchReport> reports);

std::vector<BenchReport> parse_json_reports(std::string_view text);
std::vector<BenchReport> parse_csv_reports(std::string_view text);

/// Writes the rendered reports to path ("-" for stdout). Throws Errc::IoError.
void emit_report(std::span<const BenchReport> reports, ReportFormat format, const std::string& path);
/// Reads a JSON or CSV report file, picking the parser from the first byte.
std::vector<BenchReport> read_reports(const std::string& path);

struct CompareTolerance {
  double abs = 1e-12;
  double rel = 1e-9;
};

struct ComparisonRow {
  std::string dataset;
  std::string model;
  std::optional<double> time_a_ms;
  std::optional<double> time_b_ms;
  std::optional<double> speed_ratio;  // time_b / time_a
  std::map<std::string, double> deltas;  // b - a per metric
  std::vector<std::string> mismatches;
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  bool pass = true;
};

/// Pairs rows by (dataset, model) and diffs their metrics and epochs_run.
/// Throws Errc::KeyMismatch naming a row present on only one side.
Comparison compare_reports(std::span<const BenchReport> a, std::span<const BenchReport> b,
                           const CompareTolerance& tol = {});

}  // namespace fastml::bench

#endif  // FASTML_BENCH_REPORT_HPP
