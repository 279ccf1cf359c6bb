#pragma once

#include <cstddef>
#include <vector>

namespace triphoton {

// Uniform sample axis start + i * step, i in [0, count).
class Grid1D {
 public:
  // Throws InvalidArgument unless count >= 2, step > 0 and both are finite.
  Grid1D(double start, double step, std::size_t count);

  double start() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  std::size_t count() const noexcept { return count_; }
  double value(std::size_t i) const noexcept { return start_ + static_cast<double>(i) * step_; }
  double back() const noexcept { return value(count_ - 1); }
  std::vector<double> values() const;

  bool operator==(const Grid1D&) const = default;

 private:
  double start_;
  double step_;
  std::size_t count_;
};

}  // namespace triphoton
