#ifndef CROSSDIFF_FORMAT_HPP
#define CROSSDIFF_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <string>

namespace crossdiff {

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace crossdiff

#endif  // CROSSDIFF_FORMAT_HPP
