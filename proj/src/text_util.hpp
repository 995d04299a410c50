// Internal string helpers shared by the parsing and rendering code.
#ifndef C45_TEXT_UTIL_HPP
#define C45_TEXT_UTIL_HPP

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace c45::detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_cells(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    auto cell = comma == std::string_view::npos ? line.substr(start)
                                                : line.substr(start, comma - start);
    out.emplace_back(trim(cell));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline bool parse_number(std::string_view token, double& out) {
  token = trim(token);
  if (token.empty()) return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size() && std::isfinite(out);
}

/// Shortest round-trip decimal form ("36", "2.75").
inline std::string format_number(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

/// Fixed one-decimal form used by tree annotations ("180.0").
inline std::string format_weight(double v) {
  char buf[64];
  int len = std::snprintf(buf, sizeof buf, "%.1f", v);
  return std::string(buf, len);
}

}  // namespace c45::detail

#endif  // C45_TEXT_UTIL_HPP
