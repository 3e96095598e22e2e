#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace sharpconst {

/// Shortest round-trip decimal form; `inf` for +infinity.
inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace sharpconst
