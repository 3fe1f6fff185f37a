#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace ciag {

/// Shortest fixed-notation decimal that parses back to exactly the same
/// double. Cent-exact money values render with no trailing noise ("1918.5").
inline std::string fmt_exact(double x) {
  char buf[336];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

/// Probabilities render at 12 significant digits.
inline std::string fmt_prob(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline std::string fmt_count(std::int64_t n) { return std::to_string(n); }

/// One CSV record; cells here never contain commas, quotes or newlines.
inline std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace ciag
