#pragma once

// Scalar spectral ingredients of the triphoton amplitudes.
//
// Units: time in ps, angular frequency detunings in rad/ps, transverse
// wavevectors in rad/um.

#include <complex>

namespace triphoton::spectra {

using Complex = std::complex<double>;

// Group-delay products t_ij = L / D_ij (ps), signed and nonzero.
class PhaseMatchConfig {
 public:
  PhaseMatchConfig(double t12_ps, double t32_ps);

  double t12() const noexcept { return t12_; }
  double t32() const noexcept { return t32_; }

  bool operator==(const PhaseMatchConfig&) const = default;

 private:
  double t12_;
  double t32_;
};

enum class FilterShape { gaussian, rectangular };

// Amplitude filter f(nu): gaussian exp(-(nu - c)^2 / (2 sigma^2)), or the
// indicator of |nu - c| <= sigma. sigma and c in rad/ps.
class FilterSpec {
 public:
  FilterSpec(FilterShape shape, double sigma, double center_offset = 0.0);

  static FilterSpec gaussian(double sigma, double center_offset = 0.0) {
    return FilterSpec(FilterShape::gaussian, sigma, center_offset);
  }
  static FilterSpec rectangular(double sigma, double center_offset = 0.0) {
    return FilterSpec(FilterShape::rectangular, sigma, center_offset);
  }

  FilterShape shape() const noexcept { return shape_; }
  double sigma() const noexcept { return sigma_; }
  double center_offset() const noexcept { return center_offset_; }

  bool operator==(const FilterSpec&) const = default;

 private:
  FilterShape shape_;
  double sigma_;
  double center_offset_;
};

// Gaussian amplitude window W(alpha) = exp(-alpha^2 / alpha_max^2) on each
// transverse axis; dims is 1 or 2 (2 = separable product of two axes).
class TransverseWindow {
 public:
  explicit TransverseWindow(double alpha_max, int dims = 1);

  double alpha_max() const noexcept { return alpha_max_; }
  int dims() const noexcept { return dims_; }

  bool operator==(const TransverseWindow&) const = default;

 private:
  double alpha_max_;
  int dims_;
};

// Longitudinal detuning function (1 - e^{-ix}) / (ix) = sinc(x/2) e^{-ix/2},
// with phi(0) = 1. Throws InvalidArgument for non-finite x.
Complex phi(double x);

// x = -nu1 * t12 - nu3 * t32 for the three-mode state.
double detuning_w(double nu1, double nu3, const PhaseMatchConfig& cfg);

// x = -2 nu1 * t12 for the degenerate two-mode state.
double detuning_ghz(double nu1, const PhaseMatchConfig& cfg);

double filter_eval(const FilterSpec& f, double nu);

double window_eval(const TransverseWindow& w, double alpha);

}  // namespace triphoton::spectra
