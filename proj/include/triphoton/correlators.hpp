#pragma once

// Second- and third-order correlation functions of the three-mode |1,1,1>
// state and the degenerate two-mode |1,2> state, evaluated by trapezoid
// quadrature over the detuning (or transverse wavevector) axes.
//
// Delay convention: spectral amplitudes are transformed with e^{+i nu tau}.
// With negative group-delay products t_ij the G(3) support then lies in
// tau_ij in [0, |t_ij|], and the conditional line is
// tau32 = |t12| - tau12.

#include <cstddef>
#include <span>
#include <vector>

#include "triphoton/fourier.hpp"
#include "triphoton/grid.hpp"
#include "triphoton/spectra.hpp"

namespace triphoton::corr {

using fourier::Method;
using spectra::FilterSpec;
using spectra::PhaseMatchConfig;
using spectra::TransverseWindow;

inline constexpr double kDelayKernelSign = +1.0;

// Transverse integrals run over [-kTransverseSpanFactor * alpha_max,
// +kTransverseSpanFactor * alpha_max] with kTransverseNodes trapezoid nodes.
inline constexpr double kTransverseSpanFactor = 8.0;
inline constexpr std::size_t kTransverseNodes = 1024;

enum class Kind { g2_temporal, g3_temporal, g2_spatial, g3_spatial };
enum class State { w111, ghz12 };

const char* to_string(Kind kind);
const char* to_string(State state);

class CorrelationSurface {
 public:
  // values are row-major over axes; all must be finite and >= 0.
  CorrelationSurface(Kind kind, State state, std::vector<Grid1D> axes, std::vector<double> values, bool normalized);

  Kind kind() const noexcept { return kind_; }
  State state() const noexcept { return state_; }
  const std::vector<Grid1D>& axes() const noexcept { return axes_; }
  const std::vector<double>& values() const noexcept { return values_; }
  bool normalized() const noexcept { return normalized_; }
  std::size_t rank() const noexcept { return axes_.size(); }

  double at(std::size_t i) const { return values_.at(i); }
  double at(std::size_t i, std::size_t j) const { return values_.at(i * axes_.at(1).count() + j); }

  double max_value() const;
  std::size_t argmax() const;

 private:
  Kind kind_;
  State state_;
  std::vector<Grid1D> axes_;
  std::vector<double> values_;
  bool normalized_;
};

// n_points trapezoid nodes on [-nu_span, nu_span] (rad/ps) per frequency axis.
struct QuadratureSpec {
  std::size_t n_points = 1024;
  double nu_span = 6.4;

  bool operator==(const QuadratureSpec&) const = default;
};

// Throws ConfigurationError unless nu_span >= 6 * (|offset| + sigma) for every
// Gaussian filter and nu_span >= 6 * 2 pi / max(|t12|, |t32|).
void check_quadrature(const QuadratureSpec& quad, const PhaseMatchConfig& cfg, std::span<const FilterSpec> filters);

struct EvalOptions {
  Method method = Method::fft;
  bool normalize = true;
};

// |1,1,1> second order: int dnu3 | int dnu1 f1(nu1) f2(nu1+nu3) Phi e^{i nu1 tau12} |^2.
CorrelationSurface g2_w_temporal(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                 const QuadratureSpec& quad, const Grid1D& tau12, EvalOptions opts = {});

// |1,1,1> third order on the (tau12, tau32) grid.
CorrelationSurface g3_w_temporal(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                 const FilterSpec& f3, const QuadratureSpec& quad, const Grid1D& tau12,
                                 const Grid1D& tau32, EvalOptions opts = {});

// Third order along tau32 = |t12| - tau12, each point summed directly.
CorrelationSurface g3_w_conditional(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                    const FilterSpec& f3, const QuadratureSpec& quad, const Grid1D& tau12,
                                    bool normalize = true);

// Third order along an arbitrary line tau32 = slope * tau12 + offset.
CorrelationSurface g3_w_line(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                             const FilterSpec& f3, const QuadratureSpec& quad, const Grid1D& tau12, double slope,
                             double offset, bool normalize = true);

// |1,2> second order: int dnu1 |f1(nu1) f2(nu1) Phi(-2 nu1 t12)|^2, no delay dependence.
double g2_ghz_temporal(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                       const QuadratureSpec& quad);

// The same integral with the delay phase e^{i nu1 tau} kept inside the
// modulus, evaluated at every grid point.
CorrelationSurface g2_ghz_temporal_curve(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                         const QuadratureSpec& quad, const Grid1D& tau12, bool normalize = true);

// |1,2> third order: | int dnu1 f1^2 f2 Phi(-2 nu1 t12) e^{2 i nu1 tau12} |^2.
CorrelationSurface g3_ghz_temporal(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                   const QuadratureSpec& quad, const Grid1D& tau12, EvalOptions opts = {});

// Spectral amplitude f1(nu)^2 f2(nu) Phi(-2 nu t12) entering the |1,2> G(3).
spectra::Complex ghz_spectral_amplitude(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                        double nu);

// int dalpha3 W^2(alpha3) | int dalpha1 W(alpha1) e^{i alpha1 drho12} |^2.
CorrelationSurface g2_w_spatial(const TransverseWindow& window, const Grid1D& rho12, EvalOptions opts = {});

// | int int W(alpha1) W(alpha3) e^{i alpha1 drho12} e^{i alpha3 drho32} |^2.
CorrelationSurface g3_w_spatial(const TransverseWindow& window, const Grid1D& rho12, const Grid1D& rho32,
                                EvalOptions opts = {});

// | int W(alpha1) e^{2 i alpha1 drho12} |^2.
CorrelationSurface g3_ghz_spatial(const TransverseWindow& window, const Grid1D& rho12, EvalOptions opts = {});

// | int W(alpha1) e^{i alpha1 drho12} |^2, the single-window reference width.
CorrelationSurface single_window_spatial(const TransverseWindow& window, const Grid1D& rho12, EvalOptions opts = {});

// int W^2(alpha1) dalpha1: the displacement-independent |1,2> second order.
double g2_ghz_spatial(const TransverseWindow& window);

CorrelationSurface g2_ghz_spatial_curve(const TransverseWindow& window, const Grid1D& rho12, bool normalize = true);

// Divides by the maximum. Throws DegenerateInput on an all-zero surface.
CorrelationSurface normalize_to_peak(const CorrelationSurface& surface);

// Full width at half maximum of a 1-D curve, linear interpolation between
// samples. Throws AmbiguousWidth unless there are exactly two crossings.
double fwhm(const CorrelationSurface& curve);

// Half-maximum crossing positions of a 1-D curve.
std::vector<double> half_max_crossings(const CorrelationSurface& curve);

}  // namespace triphoton::corr
