#ifndef LINKMOS_SRC_TEXT_UTIL_HPP
#define LINKMOS_SRC_TEXT_UTIL_HPP

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace linkmos::detail {

// Splits on '\n', tolerating trailing '\r' and a missing final newline.
// Blank lines are dropped.
inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto pos = text.find('\n');
    std::string_view line = text.substr(0, pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return lines;
}

inline std::vector<std::string_view> split_fields(std::string_view line, char sep = ',') {
  std::vector<std::string_view> fields;
  while (true) {
    auto pos = line.find(sep);
    fields.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos) break;
    line.remove_prefix(pos + 1);
  }
  return fields;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view field, const char* what) {
  field = trim(field);
  double value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::invalid_argument(std::string(what) + ": cannot parse number '" +
                                std::string(field) + "'");
  }
  return value;
}

// 17 significant digits: enough for bit-exact double round-trips.
inline std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace linkmos::detail

#endif  // LINKMOS_SRC_TEXT_UTIL_HPP
