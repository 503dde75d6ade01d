#include "fastml/bench/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "fastml/error.hpp"
#include "number_text.hpp"

namespace fastml::bench {
namespace {

using nlohmann::json;

constexpr const char* kFixedColumns[] = {"dataset", "model",     "seed",         "complexity",
                                         "training_time_ms", "epochs_run", "timings_ms",
                                         "metric_split",     "error"};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string scalar_text(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return detail::format_double(v.get<double>());
  return v.dump();
}

// Integral text becomes an unsigned integer, other numbers a double, anything
// else stays a string.
json scalar_from_text(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  std::uint64_t u = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), u);
  if (!s.empty() && ec == std::errc() && ptr == s.data() + s.size()) return u;
  if (const auto d = detail::parse_double(s); d && detail::trim(s) == s) return *d;
  return s;
}

std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !cell.empty()) {
        row.push_back(std::move(cell));
        rows.push_back(std::move(row));
      }
      row.clear();
      cell.clear();
      any = false;
    } else {
      cell += c;
      any = true;
    }
  }
  if (quoted) fail(Errc::IoError, "unterminated quoted CSV cell");
  if (any || !cell.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

double csv_number(const std::string& cell, const std::string& column) {
  const auto v = detail::parse_double(cell);
  if (!v) fail(Errc::IoError, "column " + column + ": '" + cell + "' is not a number");
  return *v;
}

std::uint64_t csv_unsigned(const std::string& cell, const std::string& column) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    fail(Errc::IoError, "column " + column + ": '" + cell + "' is not a non-negative integer");
  }
  return v;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string metric_label(const std::string& key) {
  static const std::map<std::string, std::string> labels = {
      {"r2", "R2"},           {"mse", "MSE"},     {"mae", "MAE"},       {"rmse", "RMSE"},
      {"accuracy", "Accuracy"}, {"precision", "Precision"}, {"recall", "Recall"}, {"f1", "F1"}};
  const auto it = labels.find(key);
  return it == labels.end() ? key : it->second;
}

std::vector<std::string> table_metric_order(const BenchReport& r) {
  static const char* headline[] = {"r2", "mse", "mae", "rmse", "accuracy", "precision", "recall", "f1"};
  std::vector<std::string> keys;
  for (const char* k : headline)
    if (r.metrics.count(k)) keys.emplace_back(k);
  for (const auto& [k, v] : r.metrics)
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  return keys;
}

bool close_enough(double a, double b, const CompareTolerance& tol) {
  return std::abs(a - b) <= tol.abs + tol.rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::optional<ReportFormat> parse_format(std::string_view text) noexcept {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "table") return ReportFormat::Table;
  return std::nullopt;
}

json report_to_json(const BenchReport& r) {
  json j;
  j["dataset"] = r.dataset;
  j["model"] = r.model;
  j["config"] = r.config;
  j["timings_ms"] = r.timings_ms;
  j["training_time_ms"] = r.training_time_ms ? json(*r.training_time_ms) : json(nullptr);
  j["metrics"] = json::object();
  for (const auto& [k, v] : r.metrics) j["metrics"][k] = v;
  j["epochs_run"] = r.epochs_run ? json(*r.epochs_run) : json(nullptr);
  j["complexity"] = r.complexity;
  j["seed"] = r.seed;
  j["metric_split"] = r.metric_split;
  if (r.error) j["error"] = *r.error;
  return j;
}

BenchReport report_from_json(const json& j) {
  try {
    BenchReport r;
    r.dataset = j.at("dataset").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.config = j.at("config");
    if (!r.config.is_object()) fail(Errc::IoError, "config must be an object");
    r.timings_ms = j.at("timings_ms").get<std::vector<double>>();
    if (const auto& t = j.at("training_time_ms"); !t.is_null()) r.training_time_ms = t.get<double>();
    for (const auto& [k, v] : j.at("metrics").items()) r.metrics[k] = v.get<double>();
    if (const auto& e = j.at("epochs_run"); !e.is_null()) r.epochs_run = e.get<std::size_t>();
    r.complexity = j.at("complexity").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("metric_split")) r.metric_split = j["metric_split"].get<std::string>();
    if (j.contains("error") && !j["error"].is_null()) r.error = j["error"].get<std::string>();
    return r;
  } catch (const json::exception& e) {
    fail(Errc::IoError, std::string("malformed report entry: ") + e.what());
  }
}

std::string render_json(std::span<const BenchReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

std::string render_csv(std::span<const BenchReport> reports) {
  std::set<std::string> config_keys;
  std::set<std::string> metric_keys;
  for (const auto& r : reports) {
    for (const auto& [k, v] : r.config.items()) config_keys.insert(k);
    for (const auto& [k, v] : r.metrics) metric_keys.insert(k);
  }

  std::ostringstream out;
  bool first = true;
  auto cell = [&](const std::string& s) {
    if (!first) out << ',';
    out << csv_quote(s);
    first = false;
  };
  for (const char* c : kFixedColumns) cell(c);
  for (const auto& k : config_keys) cell("config." + k);
  for (const auto& k : metric_keys) cell("metrics." + k);
  out << '\n';

  for (const auto& r : reports) {
    first = true;
    std::string timings;
    for (std::size_t i = 0; i < r.timings_ms.size(); ++i) {
      if (i) timings += ';';
      timings += detail::format_double(r.timings_ms[i]);
    }
    cell(r.dataset);
    cell(r.model);
    cell(std::to_string(r.seed));
    cell(std::to_string(r.complexity));
    cell(r.training_time_ms ? detail::format_double(*r.training_time_ms) : "");
    cell(r.epochs_run ? std::to_string(*r.epochs_run) : "");
    cell(timings);
    cell(r.metric_split);
    cell(r.error.value_or(""));
    for (const auto& k : config_keys) cell(r.config.contains(k) ? scalar_text(r.config[k]) : "");
    for (const auto& k : metric_keys) {
      const auto it = r.metrics.find(k);
      cell(it == r.metrics.end() ? "" : detail::format_double(it->second));
    }
    out << '\n';
  }
  return out.str();
}

std::string render_table(std::span<const BenchReport> reports) {
  struct Line {
    std::string dataset, model, metric, value;
  };
  std::vector<Line> lines;
  for (const auto& r : reports) {
    Line head{r.dataset, r.model, "Training Time (ms)",
              r.training_time_ms ? fixed(*r.training_time_ms, 3) + " ms" : "n/a"};
    lines.push_back(head);
    if (r.error) {
      lines.push_back({"", "", "Error", *r.error});
      continue;
    }
    for (const auto& k : table_metric_order(r)) {
      const double v = r.metrics.at(k);
      std::string text;
      if (k == "accuracy") text = fixed(100.0 * v, 2);
      else if (v == std::floor(v) && std::abs(v) < 1e15) text = fixed(v, 0);
      else text = fixed(v, 4);
      lines.push_back({"", "", metric_label(k), text});
    }
    if (r.epochs_run) lines.push_back({"", "", "Epochs", std::to_string(*r.epochs_run)});
    lines.push_back({"", "", "Complexity", std::to_string(r.complexity)});
  }

  std::size_t w[4] = {7, 5, 18, 5};
  for (const auto& l : lines) {
    w[0] = std::max(w[0], l.dataset.size());
    w[1] = std::max(w[1], l.model.size());
    w[2] = std::max(w[2], l.metric.size());
    w[3] = std::max(w[3], l.value.size());
  }
  std::ostringstream out;
  auto row = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d) {
    out << a << std::string(w[0] - a.size(), ' ') << " | " << b << std::string(w[1] - b.size(), ' ')
        << " | " << c << std::string(w[2] - c.size(), ' ') << " | " << std::string(w[3] - d.size(), ' ')
        << d << '\n';
  };
  row("Dataset", "Model", "Evaluation Metrics", "Value");
  out << std::string(w[0], '-') << "-+-" << std::string(w[1], '-') << "-+-" << std::string(w[2], '-')
      << "-+-" << std::string(w[3], '-') << '\n';
  for (const auto& l : lines) row(l.dataset, l.model, l.metric, l.value);
  return out.str();
}

std::vector<BenchReport> parse_json_reports(std::string_view text) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::IoError, std::string("invalid JSON: ") + e.what());
  }
  if (!arr.is_array()) fail(Errc::IoError, "report JSON must be a top-level array");
  std::vector<BenchReport> out;
  for (const auto& j : arr) out.push_back(report_from_json(j));
  return out;
}

std::vector<BenchReport> parse_csv_reports(std::string_view text) {
  const auto rows = split_csv(text);
  if (rows.empty()) fail(Errc::IoError, "report CSV has no header");
  const auto& header = rows.front();
  for (const char* c : kFixedColumns) {
    if (std::find(header.begin(), header.end(), c) == header.end()) {
      fail(Errc::IoError, std::string("report CSV lacks column ") + c);
    }
  }

  std::vector<BenchReport> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& cells = rows[i];
    if (cells.size() != header.size()) {
      fail(Errc::IoError, "report CSV row " + std::to_string(i) + " has " + std::to_string(cells.size()) +
                              " cells, header has " + std::to_string(header.size()));
    }
    BenchReport r;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& name = header[c];
      const std::string& v = cells[c];
      if (name == "dataset") r.dataset = v;
      else if (name == "model") r.model = v;
      else if (name == "seed") r.seed = csv_unsigned(v, name);
      else if (name == "complexity") r.complexity = csv_unsigned(v, name);
      else if (name == "training_time_ms") {
        if (!v.empty()) r.training_time_ms = csv_number(v, name);
      } else if (name == "epochs_run") {
        if (!v.empty()) r.epochs_run = csv_unsigned(v, name);
      } else if (name == "timings_ms") {
        std::string_view rest = v;
        while (!rest.empty()) {
          const auto pos = rest.find(';');
          r.timings_ms.push_back(csv_number(std::string(rest.substr(0, pos)), name));
          if (pos == std::string_view::npos) break;
          rest.remove_prefix(pos + 1);
        }
      } else if (name == "metric_split") r.metric_split = v;
      else if (name == "error") {
        if (!v.empty()) r.error = v;
      } else if (name.starts_with("config.")) {
        if (!v.empty()) r.config[name.substr(7)] = scalar_from_text(v);
      } else if (name.starts_with("metrics.")) {
        if (!v.empty()) r.metrics[name.substr(8)] = csv_number(v, name);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

void emit_report(std::span<const BenchReport> reports, ReportFormat format, const std::string& path) {
  if (reports.empty()) fail(Errc::EmptyInput, "no reports to emit");
  std::string text;
  switch (format) {
    case ReportFormat::Json: text = render_json(reports); break;
    case ReportFormat::Csv: text = render_csv(reports); break;
    case ReportFormat::Table: text = render_table(reports); break;
  }
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  out << text;
  if (!out) fail(Errc::IoError, "write to " + path + " failed");
}

std::vector<BenchReport> read_reports(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::FileNotFound, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '[') return parse_json_reports(text);
  return parse_csv_reports(text);
}

Comparison compare_reports(std::span<const BenchReport> a, std::span<const BenchReport> b,
                           const CompareTolerance& tol) {
  auto key = [](const BenchReport& r) { return r.dataset + " / " + r.model; };
  std::map<std::string, const BenchReport*> b_rows;
  for (const auto& r : b) b_rows[key(r)] = &r;
  for (const auto& r : b) {
    const bool in_a = std::any_of(a.begin(), a.end(), [&](const BenchReport& x) { return key(x) == key(r); });
    if (!in_a) fail(Errc::KeyMismatch, "row " + key(r) + " is missing from the first report");
  }

  Comparison result;
  for (const auto& ra : a) {
    const auto it = b_rows.find(key(ra));
    if (it == b_rows.end()) fail(Errc::KeyMismatch, "row " + key(ra) + " is missing from the second report");
    const BenchReport& rb = *it->second;

    ComparisonRow row;
    row.dataset = ra.dataset;
    row.model = ra.model;
    row.time_a_ms = ra.training_time_ms;
    row.time_b_ms = rb.training_time_ms;
    if (ra.training_time_ms && rb.training_time_ms && *ra.training_time_ms > 0.0) {
      row.speed_ratio = *rb.training_time_ms / *ra.training_time_ms;
    }
    for (const auto& [k, va] : ra.metrics) {
      const auto mb = rb.metrics.find(k);
      if (mb == rb.metrics.end()) {
        row.mismatches.push_back("metric " + k + " missing from second report");
        continue;
      }
      row.deltas[k] = mb->second - va;
      if (!close_enough(va, mb->second, tol)) row.mismatches.push_back("metric " + k);
    }
    for (const auto& [k, vb] : rb.metrics)
      if (!ra.metrics.count(k)) row.mismatches.push_back("metric " + k + " missing from first report");
    if (ra.epochs_run != rb.epochs_run) row.mismatches.push_back("epochs_run");
    if (ra.error != rb.error) row.mismatches.push_back("error");
    if (!row.mismatches.empty()) result.pass = false;
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace fastml::bench
