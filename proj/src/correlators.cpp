#include "triphoton/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "triphoton/errors.hpp"
#include "triphoton/parallel.hpp"

namespace triphoton::corr {

using fourier::Complex;
using fourier::FourierSum;
using fourier::Quadrature;
using spectra::FilterShape;
using spectra::detuning_ghz;
using spectra::detuning_w;
using spectra::filter_eval;
using spectra::phi;
using spectra::window_eval;

namespace {

Quadrature frequency_nodes(const QuadratureSpec& quad) { return fourier::trapezoid(quad.nu_span, quad.n_points); }

Quadrature transverse_nodes(const TransverseWindow& window) {
  return fourier::trapezoid(kTransverseSpanFactor * window.alpha_max(), kTransverseNodes);
}

CorrelationSurface finish(Kind kind, State state, std::vector<Grid1D> axes, std::vector<double> values,
                          bool normalize) {
  CorrelationSurface s(kind, state, std::move(axes), std::move(values), false);
  return normalize ? normalize_to_peak(s) : s;
}

std::vector<double> squared_magnitudes(const std::vector<Complex>& amplitudes) {
  std::vector<double> out(amplitudes.size());
  std::transform(amplitudes.begin(), amplitudes.end(), out.begin(), [](Complex a) { return std::norm(a); });
  return out;
}

// Weighted three-mode spectral amplitude w1 w3 f1(nu1) f2(nu1+nu3) f3(nu3) Phi,
// row-major [nu1][nu3]. f3 may be null (second-order integrand).
std::vector<Complex> w_integrand(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                 const FilterSpec* f3, const Quadrature& q, bool include_nu3_weight) {
  const std::size_t n = q.size();
  std::vector<Complex> g(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double nu1 = q.node(i);
    const double a1 = q.weights[i] * filter_eval(f1, nu1);
    for (std::size_t k = 0; k < n; ++k) {
      const double nu3 = q.node(k);
      double a = a1 * filter_eval(f2, nu1 + nu3);
      if (f3 != nullptr) a *= filter_eval(*f3, nu3);
      if (include_nu3_weight) a *= q.weights[k];
      g[i * n + k] = a == 0.0 ? Complex(0.0, 0.0) : a * phi(detuning_w(nu1, nu3, cfg));
    }
  }
  return g;
}

double transverse_window_integral(const TransverseWindow& window, const Quadrature& q, int power) {
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) sum += q.weights[i] * std::pow(window_eval(window, q.node(i)), power);
  return sum;
}

// 1-D transverse amplitude int W(alpha) e^{i scale alpha rho} over the grid.
std::vector<Complex> transverse_amplitude(const TransverseWindow& window, const Quadrature& q, const Grid1D& rho,
                                          double scale, Method method) {
  std::vector<Complex> h(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) h[i] = q.weights[i] * window_eval(window, q.node(i));
  return fourier::transform(h, q.axis, rho, scale, method);
}

}  // namespace

const char* to_string(Kind kind) {
  switch (kind) {
    case Kind::g2_temporal:
      return "g2_temporal";
    case Kind::g3_temporal:
      return "g3_temporal";
    case Kind::g2_spatial:
      return "g2_spatial";
    case Kind::g3_spatial:
      return "g3_spatial";
  }
  return "unknown";
}

const char* to_string(State state) { return state == State::w111 ? "w111" : "ghz12"; }

CorrelationSurface::CorrelationSurface(Kind kind, State state, std::vector<Grid1D> axes, std::vector<double> values,
                                       bool normalized)
    : kind_(kind), state_(state), axes_(std::move(axes)), values_(std::move(values)), normalized_(normalized) {
  if (axes_.empty() || axes_.size() > 2) throw InvalidArgument("CorrelationSurface: need one or two axes");
  std::size_t expected = 1;
  for (const auto& a : axes_) expected *= a.count();
  if (values_.size() != expected) throw InvalidArgument("CorrelationSurface: value count does not match axes");
  for (double v : values_)
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("CorrelationSurface: values must be finite and >= 0");
  if (normalized_ && std::abs(max_value() - 1.0) > 1e-12)
    throw InvalidArgument("CorrelationSurface: normalized surface must peak at 1");
}

double CorrelationSurface::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

std::size_t CorrelationSurface::argmax() const {
  return static_cast<std::size_t>(std::max_element(values_.begin(), values_.end()) - values_.begin());
}

void check_quadrature(const QuadratureSpec& quad, const PhaseMatchConfig& cfg, std::span<const FilterSpec> filters) {
  std::ostringstream msg;
  if (quad.n_points < 2) throw ConfigurationError("quadrature: n_points must be at least 2");
  if (!std::isfinite(quad.nu_span) || !(quad.nu_span > 0.0))
    throw ConfigurationError("quadrature: nu_span must be positive");
  for (const auto& f : filters) {
    if (f.shape() != FilterShape::gaussian) continue;
    const double need = 6.0 * (std::abs(f.center_offset()) + f.sigma());
    if (quad.nu_span < need) {
      msg << "quadrature: nu_span " << quad.nu_span << " rad/ps does not cover 6x the Gaussian filter extent ("
          << need << " rad/ps)";
      throw ConfigurationError(msg.str());
    }
  }
  const double lobe = 2.0 * std::numbers::pi / std::max(std::abs(cfg.t12()), std::abs(cfg.t32()));
  if (quad.nu_span < 6.0 * lobe) {
    msg << "quadrature: nu_span " << quad.nu_span << " rad/ps does not cover 6x the phase-matching main lobe ("
        << 6.0 * lobe << " rad/ps)";
    throw ConfigurationError(msg.str());
  }
}

CorrelationSurface g2_w_temporal(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                 const QuadratureSpec& quad, const Grid1D& tau12, EvalOptions opts) {
  const FilterSpec filters[] = {f1, f2};
  check_quadrature(quad, cfg, filters);
  const Quadrature q = frequency_nodes(quad);
  const std::size_t n = q.size();
  const std::size_t m = tau12.count();
  const std::vector<Complex> g = w_integrand(cfg, f1, f2, nullptr, q, false);

  // One inner transform over nu1 per nu3 sample, then a fixed-order outer sum.
  const FourierSum inner(q.axis, tau12, kDelayKernelSign, opts.method);
  std::vector<double> slices(n * m);
  parallel_for(n, [&](std::size_t k) {
    std::vector<Complex> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = g[i * n + k];
    std::vector<Complex> amp(m);
    inner.apply(column, amp);
    for (std::size_t a = 0; a < m; ++a) slices[k * m + a] = std::norm(amp[a]);
  });

  std::vector<double> values(m, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < m; ++a) values[a] += q.weights[k] * slices[k * m + a];
  return finish(Kind::g2_temporal, State::w111, {tau12}, std::move(values), opts.normalize);
}

CorrelationSurface g3_w_temporal(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                 const FilterSpec& f3, const QuadratureSpec& quad, const Grid1D& tau12,
                                 const Grid1D& tau32, EvalOptions opts) {
  const FilterSpec filters[] = {f1, f2, f3};
  check_quadrature(quad, cfg, filters);
  const Quadrature q = frequency_nodes(quad);
  const std::vector<Complex> g = w_integrand(cfg, f1, f2, &f3, q, true);
  const auto amp = fourier::transform_2d(g, q.axis, q.axis, tau12, tau32, kDelayKernelSign, opts.method);
  return finish(Kind::g3_temporal, State::w111, {tau12, tau32}, squared_magnitudes(amp), opts.normalize);
}

CorrelationSurface g3_w_line(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                             const FilterSpec& f3, const QuadratureSpec& quad, const Grid1D& tau12, double slope,
                             double offset, bool normalize) {
  const FilterSpec filters[] = {f1, f2, f3};
  check_quadrature(quad, cfg, filters);
  const Quadrature q = frequency_nodes(quad);
  const std::size_t n = q.size();
  const std::vector<Complex> g = w_integrand(cfg, f1, f2, &f3, q, true);

  std::vector<double> values(tau12.count());
  parallel_for(tau12.count(), [&](std::size_t a) {
    const double t12 = tau12.value(a);
    const double t32 = slope * t12 + offset;
    std::vector<Complex> e3(n);
    for (std::size_t k = 0; k < n; ++k) e3[k] = std::polar(1.0, kDelayKernelSign * q.node(k) * t32);
    Complex amp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex* row = &g[i * n];
      Complex sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += row[k] * e3[k];
      amp += sum * std::polar(1.0, kDelayKernelSign * q.node(i) * t12);
    }
    values[a] = std::norm(amp);
  });
  return finish(Kind::g3_temporal, State::w111, {tau12}, std::move(values), normalize);
}

CorrelationSurface g3_w_conditional(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                    const FilterSpec& f3, const QuadratureSpec& quad, const Grid1D& tau12,
                                    bool normalize) {
  return g3_w_line(cfg, f1, f2, f3, quad, tau12, -1.0, std::abs(cfg.t12()), normalize);
}

double g2_ghz_temporal(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                       const QuadratureSpec& quad) {
  const FilterSpec filters[] = {f1, f2};
  check_quadrature(quad, cfg, filters);
  const Quadrature q = frequency_nodes(quad);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double nu = q.node(i);
    sum += q.weights[i] * std::norm(filter_eval(f1, nu) * filter_eval(f2, nu) * phi(detuning_ghz(nu, cfg)));
  }
  return sum;
}

CorrelationSurface g2_ghz_temporal_curve(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                         const QuadratureSpec& quad, const Grid1D& tau12, bool normalize) {
  const FilterSpec filters[] = {f1, f2};
  check_quadrature(quad, cfg, filters);
  const Quadrature q = frequency_nodes(quad);
  std::vector<Complex> h(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double nu = q.node(i);
    h[i] = filter_eval(f1, nu) * filter_eval(f2, nu) * phi(detuning_ghz(nu, cfg));
  }
  std::vector<double> values(tau12.count());
  for (std::size_t a = 0; a < tau12.count(); ++a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
      sum += q.weights[i] * std::norm(h[i] * std::polar(1.0, kDelayKernelSign * q.node(i) * tau12.value(a)));
    values[a] = sum;
  }
  return finish(Kind::g2_temporal, State::ghz12, {tau12}, std::move(values), normalize);
}

spectra::Complex ghz_spectral_amplitude(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                        double nu) {
  const double a1 = filter_eval(f1, nu);
  return a1 * a1 * filter_eval(f2, nu) * phi(detuning_ghz(nu, cfg));
}

CorrelationSurface g3_ghz_temporal(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                   const QuadratureSpec& quad, const Grid1D& tau12, EvalOptions opts) {
  const FilterSpec filters[] = {f1, f2};
  check_quadrature(quad, cfg, filters);
  const Quadrature q = frequency_nodes(quad);
  std::vector<Complex> h(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) h[i] = q.weights[i] * ghz_spectral_amplitude(cfg, f1, f2, q.node(i));
  const auto amp = fourier::transform(h, q.axis, tau12, 2.0 * kDelayKernelSign, opts.method);
  return finish(Kind::g3_temporal, State::ghz12, {tau12}, squared_magnitudes(amp), opts.normalize);
}

CorrelationSurface g2_w_spatial(const TransverseWindow& window, const Grid1D& rho12, EvalOptions opts) {
  const Quadrature q = transverse_nodes(window);
  const auto inner = transverse_amplitude(window, q, rho12, 1.0, opts.method);
  // Traced photon: int W^2(alpha3) per axis; the detected pair's second
  // transverse axis (dims == 2) enters at zero displacement.
  double outer = transverse_window_integral(window, q, 2);
  if (window.dims() == 2) outer = outer * outer * std::pow(transverse_window_integral(window, q, 1), 2);
  std::vector<double> values = squared_magnitudes(inner);
  for (double& v : values) v *= outer;
  return finish(Kind::g2_spatial, State::w111, {rho12}, std::move(values), opts.normalize);
}

CorrelationSurface g3_w_spatial(const TransverseWindow& window, const Grid1D& rho12, const Grid1D& rho32,
                                EvalOptions opts) {
  const Quadrature q = transverse_nodes(window);
  const std::size_t n = q.size();
  std::vector<Complex> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      g[i * n + k] = q.weights[i] * q.weights[k] * window_eval(window, q.node(i)) * window_eval(window, q.node(k));
  const auto amp = fourier::transform_2d(g, q.axis, q.axis, rho12, rho32, 1.0, opts.method);
  std::vector<double> values = squared_magnitudes(amp);
  if (window.dims() == 2) {
    const double y = std::pow(transverse_window_integral(window, q, 1), 4);
    for (double& v : values) v *= y;
  }
  return finish(Kind::g3_spatial, State::w111, {rho12, rho32}, std::move(values), opts.normalize);
}

CorrelationSurface g3_ghz_spatial(const TransverseWindow& window, const Grid1D& rho12, EvalOptions opts) {
  const Quadrature q = transverse_nodes(window);
  std::vector<double> values = squared_magnitudes(transverse_amplitude(window, q, rho12, 2.0, opts.method));
  if (window.dims() == 2) {
    const double y = std::pow(transverse_window_integral(window, q, 1), 2);
    for (double& v : values) v *= y;
  }
  return finish(Kind::g3_spatial, State::ghz12, {rho12}, std::move(values), opts.normalize);
}

CorrelationSurface single_window_spatial(const TransverseWindow& window, const Grid1D& rho12, EvalOptions opts) {
  const Quadrature q = transverse_nodes(window);
  std::vector<double> values = squared_magnitudes(transverse_amplitude(window, q, rho12, 1.0, opts.method));
  if (window.dims() == 2) {
    const double y = std::pow(transverse_window_integral(window, q, 1), 2);
    for (double& v : values) v *= y;
  }
  return finish(Kind::g2_spatial, State::w111, {rho12}, std::move(values), opts.normalize);
}

double g2_ghz_spatial(const TransverseWindow& window) {
  const Quadrature q = transverse_nodes(window);
  return std::pow(transverse_window_integral(window, q, 2), window.dims());
}

CorrelationSurface g2_ghz_spatial_curve(const TransverseWindow& window, const Grid1D& rho12, bool normalize) {
  const Quadrature q = transverse_nodes(window);
  const double y = window.dims() == 2 ? transverse_window_integral(window, q, 2) : 1.0;
  std::vector<double> values(rho12.count());
  for (std::size_t a = 0; a < rho12.count(); ++a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double alpha = q.node(i);
      sum += q.weights[i] * std::norm(window_eval(window, alpha) * std::polar(1.0, 2.0 * alpha * rho12.value(a)));
    }
    values[a] = sum * y;
  }
  return finish(Kind::g2_spatial, State::ghz12, {rho12}, std::move(values), normalize);
}

CorrelationSurface normalize_to_peak(const CorrelationSurface& surface) {
  const double peak = surface.max_value();
  if (!(peak > 0.0)) throw DegenerateInput("normalize_to_peak: surface is identically zero");
  std::vector<double> values = surface.values();
  for (double& v : values) v /= peak;
  return CorrelationSurface(surface.kind(), surface.state(), surface.axes(), std::move(values), true);
}

std::vector<double> half_max_crossings(const CorrelationSurface& curve) {
  if (curve.rank() != 1) throw InvalidArgument("fwhm: curve must be one-dimensional");
  const Grid1D& axis = curve.axes().front();
  const auto& v = curve.values();
  const double half = 0.5 * curve.max_value();
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const bool above_here = v[i] >= half;
    const bool above_next = v[i + 1] >= half;
    if (above_here == above_next) continue;
    crossings.push_back(axis.value(i) + (half - v[i]) / (v[i + 1] - v[i]) * axis.step());
  }
  return crossings;
}

double fwhm(const CorrelationSurface& curve) {
  std::vector<double> crossings = half_max_crossings(curve);
  if (crossings.size() == 2) return crossings[1] - crossings[0];

  std::ostringstream msg;
  if (crossings.empty())
    msg << "fwhm: no half-maximum crossing inside the grid";
  else if (crossings.size() == 1)
    msg << "fwhm: curve stays above half maximum at a grid edge; single crossing at " << crossings[0];
  else {
    msg << "fwhm: " << crossings.size() << " half-maximum crossings at";
    for (double c : crossings) msg << ' ' << c;
  }
  throw AmbiguousWidth(msg.str(), std::move(crossings));
}

}  // namespace triphoton::corr
