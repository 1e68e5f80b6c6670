#pragma once

// Locale-independent number formatting used by every file writer.

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace fdo::text {

/// Shortest decimal that parses back to exactly the same double.
inline std::string shortest(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

/// Fixed notation with the given number of decimals (rounded).
inline std::string fixed(double value, int decimals) {
  char buf[128];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                       std::chars_format::fixed, decimals);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

/// Fixed notation cut (not rounded) to the given number of decimals, the
/// convention of published confusion-matrix tables (18/22 -> "0.81").
inline std::string truncated(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // The nudge absorbs representation error such as 0.29 * 100 = 28.999...
  const double cut = std::trunc(value * scale + (value >= 0 ? 1e-9 : -1e-9));
  return fixed(cut / scale, decimals);
}

}  // namespace fdo::text
