#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace kicktop::detail {

/// Shortest round-trip representation; "nan" for NaN.
inline std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace kicktop::detail
