#pragma once

#include <optional>
#include <string>

namespace antifrag {

// Fixed `%.17g` rendering used by every output file.
std::string format_real(double v);

// Empty string for a missing value.
std::string format_real(const std::optional<double>& v);

// Shortest text that parses back to the same double (input-file style).
std::string format_shortest(double v);

}  // namespace antifrag
