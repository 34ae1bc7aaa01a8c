#include "antifrag/format.hpp"

#include <charconv>
#include <cstdio>

namespace antifrag {

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // print -0 as 0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

std::string format_shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace antifrag
