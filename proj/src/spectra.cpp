#include "triphoton/spectra.hpp"

#include <cmath>

#include "triphoton/errors.hpp"

namespace triphoton::spectra {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

}  // namespace

PhaseMatchConfig::PhaseMatchConfig(double t12_ps, double t32_ps) : t12_(t12_ps), t32_(t32_ps) {
  require_finite(t12_, "t12");
  require_finite(t32_, "t32");
  if (t12_ == 0.0 || t32_ == 0.0) throw InvalidArgument("PhaseMatchConfig: group-delay products must be nonzero");
}

FilterSpec::FilterSpec(FilterShape shape, double sigma, double center_offset)
    : shape_(shape), sigma_(sigma), center_offset_(center_offset) {
  require_finite(sigma_, "filter sigma");
  require_finite(center_offset_, "filter center offset");
  if (!(sigma_ > 0.0)) throw InvalidArgument("FilterSpec: sigma must be positive");
}

TransverseWindow::TransverseWindow(double alpha_max, int dims) : alpha_max_(alpha_max), dims_(dims) {
  require_finite(alpha_max_, "alpha_max");
  if (!(alpha_max_ > 0.0)) throw InvalidArgument("TransverseWindow: alpha_max must be positive");
  if (dims_ != 1 && dims_ != 2) throw InvalidArgument("TransverseWindow: dims must be 1 or 2");
}

Complex phi(double x) {
  require_finite(x, "phi argument");
  if (std::abs(x) < 1e-6) {
    // 1 - ix/2 - x^2/6 + i x^3/24
    const double x2 = x * x;
    return {1.0 - x2 / 6.0, -x / 2.0 + x * x2 / 24.0};
  }
  const double half = 0.5 * x;
  const double sinc = std::sin(half) / half;
  return {sinc * std::cos(half), -sinc * std::sin(half)};
}

double detuning_w(double nu1, double nu3, const PhaseMatchConfig& cfg) {
  require_finite(nu1, "nu1");
  require_finite(nu3, "nu3");
  return -nu1 * cfg.t12() - nu3 * cfg.t32();
}

double detuning_ghz(double nu1, const PhaseMatchConfig& cfg) {
  require_finite(nu1, "nu1");
  return -2.0 * nu1 * cfg.t12();
}

double filter_eval(const FilterSpec& f, double nu) {
  require_finite(nu, "filter frequency");
  const double d = nu - f.center_offset();
  switch (f.shape()) {
    case FilterShape::gaussian:
      return std::exp(-d * d / (2.0 * f.sigma() * f.sigma()));
    case FilterShape::rectangular:
      return std::abs(d) <= f.sigma() ? 1.0 : 0.0;
  }
  return 0.0;
}

double window_eval(const TransverseWindow& w, double alpha) {
  const double r = alpha / w.alpha_max();
  return std::exp(-r * r);
}

}  // namespace triphoton::spectra
