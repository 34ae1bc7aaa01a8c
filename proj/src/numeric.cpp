#include "antifrag/numeric.hpp"

#include <algorithm>
#include <stdexcept>

namespace antifrag {

double compensated_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean of empty sequence");
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  return sum.value() / static_cast<double>(values.size());
}

std::vector<double> minmax_normalize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("minmax_normalize: empty input");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> out(values.size(), 0.5);
  if (hi > lo) {
    const double range = hi - lo;
    for (std::size_t i = 0; i < values.size(); ++i) {
      // Clamp guards the last ulp; (hi - lo) / (hi - lo) is exactly 1 anyway.
      out[i] = std::clamp((values[i] - lo) / range, 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace antifrag
