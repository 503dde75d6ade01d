#include "fastml/bench/dataset.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "fastml/error.hpp"
#include "number_text.hpp"

namespace fastml::bench {
namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(detail::trim(line.substr(start)));
      return out;
    }
    out.push_back(detail::trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

std::size_t parse_count(std::string_view s, const std::string& context) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(Errc::SpecInvalid, "bad count '" + std::string(s) + "' in " + context);
  }
  return v;
}

}  // namespace

std::string_view task_name(Task task) noexcept {
  return task == Task::Regression ? "regression" : "classification";
}

std::optional<Task> parse_task(std::string_view text) noexcept {
  if (text == "regression") return Task::Regression;
  if (text == "classification" || text == "binary-classification") return Task::Classification;
  return std::nullopt;
}

DatasetSpec parse_dataset_spec(std::string_view text, std::uint64_t seed) {
  DatasetSpec spec;
  spec.id = std::string(text);
  spec.seed = seed;
  constexpr std::string_view prefix = "synthetic:";
  if (!text.starts_with(prefix)) {
    spec.csv_path = std::string(text);
    return spec;
  }

  const std::string context(text);
  std::vector<std::string_view> parts;
  std::string_view rest = text.substr(prefix.size());
  for (;;) {
    const auto pos = rest.find(':');
    parts.push_back(rest.substr(0, pos));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  if (parts.size() < 2 || parts.size() > 3) {
    fail(Errc::SpecInvalid, "expected synthetic:ROWSxCOLS:task[:param], got " + context);
  }
  const auto x = parts[0].find('x');
  if (x == std::string_view::npos) fail(Errc::SpecInvalid, "missing ROWSxCOLS in " + context);
  spec.rows = parse_count(parts[0].substr(0, x), context);
  spec.cols = parse_count(parts[0].substr(x + 1), context);

  const auto task = parse_task(parts[1]);
  if (!task) fail(Errc::SpecInvalid, "unknown task '" + std::string(parts[1]) + "'");
  spec.task = *task;
  if (parts.size() == 3) {
    const auto param = detail::parse_double(parts[2]);
    if (!param || *param < 0.0) fail(Errc::SpecInvalid, "bad parameter in " + context);
    if (spec.task == Task::Regression) spec.noise = *param;
    else spec.separation = *param;
  }
  return spec;
}

Dataset load_csv(const std::string& path, const std::string& target_column) {
  std::ifstream in(path);
  if (!in) fail(Errc::FileNotFound, "cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) fail(Errc::EmptyInput, path + " has no header row");
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  const auto header = split_commas(line);
  if (header.size() < 2) fail(Errc::ShapeMismatch, path + " needs a target and a feature column");

  std::size_t target = header.size() - 1;
  if (!target_column.empty()) {
    target = header.size();
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == target_column) target = c;
    if (target == header.size()) {
      fail(Errc::MissingTargetColumn, "column '" + target_column + "' not in " + path);
    }
  }

  Dataset data;
  data.target_name = std::string(header[target]);
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != target) data.feature_names.emplace_back(header[c]);

  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    ++row;
    const auto cells = split_commas(line);
    if (cells.size() != header.size()) {
      fail(Errc::ShapeMismatch, "row " + std::to_string(row) + " has " +
                                    std::to_string(cells.size()) + " cells, header has " +
                                    std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = detail::parse_double(cells[c]);
      if (!v) throw CellError(row, c + 1, std::string(cells[c]));
      (c == target ? ys : xs).push_back(*v);
    }
  }
  data.x = Matrix(row, header.size() - 1, std::move(xs));
  data.y = Vector(std::move(ys));
  return data;
}

void write_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  for (std::size_t c = 0; c < data.x.cols(); ++c) {
    out << (c < data.feature_names.size() ? data.feature_names[c] : "x" + std::to_string(c)) << ',';
  }
  out << (data.target_name.empty() ? "target" : data.target_name) << '\n';
  for (std::size_t r = 0; r < data.x.rows(); ++r) {
    for (double v : data.x.row(r)) out << detail::format_double(v) << ',';
    out << detail::format_double(data.y[r]) << '\n';
  }
  if (!out) fail(Errc::IoError, "write to " + path + " failed");
}

Dataset generate_synthetic(const DatasetSpec& spec, Rng& rng) {
  if (spec.rows < 10 || spec.cols < 1) {
    fail(Errc::SpecInvalid, "synthetic data needs rows >= 10 and cols >= 1");
  }
  if (!(spec.noise >= 0.0) || !(spec.separation >= 0.0)) {
    fail(Errc::SpecInvalid, "noise and separation must be non-negative");
  }
  const std::size_t n = spec.rows;
  const std::size_t p = spec.cols;
  Dataset data;
  data.target_name = "target";
  for (std::size_t c = 0; c < p; ++c) data.feature_names.push_back("x" + std::to_string(c));

  Matrix x(n, p);
  std::vector<double> y(n);
  if (spec.task == Task::Regression) {
    Vector beta(p + 1);
    for (double& b : beta) b = rng.uniform(-5.0, 5.0);
    for (std::size_t r = 0; r < n; ++r) {
      double target = beta[0];
      for (std::size_t c = 0; c < p; ++c) {
        x(r, c) = rng.normal();
        target += beta[c + 1] * x(r, c);
      }
      y[r] = target + spec.noise * rng.normal();
    }
    data.true_coefficients = std::move(beta);
  } else {
    std::vector<double> direction(p);
    double norm = 0.0;
    while (norm == 0.0) {
      norm = 0.0;
      for (double& d : direction) {
        d = rng.normal();
        norm += d * d;
      }
      norm = std::sqrt(norm);
    }
    for (double& d : direction) d /= norm;

    for (std::size_t r = 0; r < n; ++r) y[r] = static_cast<double>(r % 2);
    for (std::size_t i = n; i > 1; --i) std::swap(y[i - 1], y[rng.uniform_index(i)]);

    const double half = 0.5 * spec.separation;
    for (std::size_t r = 0; r < n; ++r) {
      const double shift = y[r] == 1.0 ? half : -half;
      for (std::size_t c = 0; c < p; ++c) x(r, c) = rng.normal() + shift * direction[c];
    }
  }
  data.x = std::move(x);
  data.y = Vector(std::move(y));
  return data;
}

Dataset load_dataset(DatasetSpec& spec) {
  if (spec.csv_path) {
    if (!std::filesystem::exists(*spec.csv_path)) {
      fail(Errc::FileNotFound, "no such file: " + *spec.csv_path);
    }
    Dataset data = load_csv(*spec.csv_path, spec.target_column);
    spec.rows = data.x.rows();
    spec.cols = data.x.cols();
    return data;
  }
  Rng rng(spec.seed);
  return generate_synthetic(spec, rng);
}

}  // namespace fastml::bench
