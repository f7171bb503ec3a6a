#pragma once

#include <cmath>
#include <cstddef>

namespace matdiff {

/// Mean and variance accumulator with Chan's pairwise merge.
struct RunningStats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  [[nodiscard]] RunningStats merged(const RunningStats& o) const noexcept {
    if (o.count == 0) return *this;
    if (count == 0) return o;
    RunningStats r;
    r.count = count + o.count;
    const double n = static_cast<double>(r.count);
    const double delta = o.mean - mean;
    r.mean = mean + delta * static_cast<double>(o.count) / n;
    r.m2 = m2 + o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
    return r;
  }

  [[nodiscard]] double variance() const noexcept {
    return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
  }
  [[nodiscard]] double standard_error() const noexcept {
    return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

}  // namespace matdiff
