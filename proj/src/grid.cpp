#include "triphoton/grid.hpp"

#include <cmath>

#include "triphoton/errors.hpp"

namespace triphoton {

Grid1D::Grid1D(double start, double step, std::size_t count) : start_(start), step_(step), count_(count) {
  if (!std::isfinite(start) || !std::isfinite(step)) throw InvalidArgument("Grid1D: start and step must be finite");
  if (!(step > 0.0)) throw InvalidArgument("Grid1D: step must be positive");
  if (count < 2) throw InvalidArgument("Grid1D: count must be at least 2");
}

std::vector<double> Grid1D::values() const {
  std::vector<double> out(count_);
  for (std::size_t i = 0; i < count_; ++i) out[i] = value(i);
  return out;
}

}  // namespace triphoton
