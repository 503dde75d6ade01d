// Shortest round-trip number formatting and strict parsing shared by the
// CSV dataset loader and the report writers.
#ifndef FASTML_SRC_BENCH_NUMBER_TEXT_HPP
#define FASTML_SRC_BENCH_NUMBER_TEXT_HPP

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace fastml::bench::detail {

inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

/// Whole-cell decimal parse; rejects empty cells, trailing junk and NaN/Inf.
inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (v != v || v - v != 0.0) return std::nullopt;
  return v;
}

}  // namespace fastml::bench::detail

#endif  // FASTML_SRC_BENCH_NUMBER_TEXT_HPP
