#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace antifrag {

// Neumaier compensated sum. Results depend only on the order values are
// added, so callers fix that order (agent id, then period).
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_mean(std::span<const double> values);

// Min-max scaling into [0, 1]; a zero-range input maps to 0.5 everywhere.
std::vector<double> minmax_normalize(std::span<const double> values);

}  // namespace antifrag
