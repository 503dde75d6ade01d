#ifndef FASTML_BENCH_DATASET_HPP
#define FASTML_BENCH_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fastml/matrix.hpp"
#include "fastml/rng.hpp"

namespace fastml::bench {

enum class Task { Regression, Classification };

std::string_view task_name(Task task) noexcept;
std::optional<Task> parse_task(std::string_view text) noexcept;

/// Where a benchmark dataset comes from and what shape it has. For CSV
/// sources rows/cols are filled in by load_dataset; cols counts feature
/// columns (the target excluded) for both kinds of source.
struct DatasetSpec {
  std::string id;
  std::optional<std::string> csv_path;
  std::size_t rows = 0;
  std::size_t cols = 0;
  Task task = Task::Regression;
  std::string target_column;  // CSV only; empty selects the last column
  std::uint64_t seed = 0;
  double noise = 0.1;       // synthetic regression: stddev of additive noise
  double separation = 4.0;  // synthetic classification: mean distance in stddevs

  /// Data-volume complexity, rows x cols.
  std::size_t complexity() const noexcept { return rows * cols; }
};

struct Dataset {
  Matrix x;
  Vector y;
  std::vector<std::string> feature_names;
  std::string target_name;
  /// Synthetic regression only: the generating coefficients, intercept first.
  std::optional<Vector> true_coefficients;
};

/// Parses "synthetic:ROWSxCOLS:regression|classification[:PARAM]" or treats
/// the text as a CSV path. PARAM is the noise level (regression) or class
/// separation (classification).
DatasetSpec parse_dataset_spec(std::string_view text, std::uint64_t seed);

/// Reads a headered, comma-delimited numeric CSV. The target column becomes
/// y; the remaining columns, in header order, become X.
Dataset load_csv(const std::string& path, const std::string& target_column = {});

void write_csv(const std::string& path, const Dataset& data);

/// Regression: X ~ N(0, 1), y = b0 + X b + noise * N(0, 1) with b drawn
/// uniformly from [-5, 5]. Classification: balanced labels {0, 1}, each row
/// N(0, I) shifted by +/- separation / 2 along a random unit direction.
Dataset generate_synthetic(const DatasetSpec& spec, Rng& rng);

/// Loads or synthesizes the data, completing spec.rows / spec.cols.
Dataset load_dataset(DatasetSpec& spec);

}  // namespace fastml::bench

#endif  // FASTML_BENCH_DATASET_HPP
