#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "oracles/direct_sums.hpp"
#include "triphoton/correlators.hpp"
#include "triphoton/errors.hpp"

using namespace triphoton;
using namespace triphoton::corr;

namespace {

const PhaseMatchConfig kFig1(-20.0, -20.0);
const FilterSpec kG = FilterSpec::gaussian(0.4);

double relative_variation(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / *hi;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("correlators agree with nested-loop sums") {
  const QuadratureSpec quad{128, 6.4};
  const auto nodes = oracle::trapezoid(6.4, 128);
  const Grid1D tau(0.0, 2.5, 9);
  const EvalOptions raw{Method::fft, false};

  const auto g3 = g3_w_temporal(kFig1, kG, kG, kG, quad, tau, tau, raw);
  const auto g2 = g2_w_temporal(kFig1, kG, kG, quad, tau, raw);
  const auto ghz = g3_ghz_temporal(kFig1, kG, kG, quad, tau, raw);
  const double g3_peak = g3.max_value(), g2_peak = g2.max_value(), ghz_peak = ghz.max_value();
  for (std::size_t a = 0; a < tau.count(); ++a) {
    CHECK(std::abs(g2.at(a) - oracle::g2_w(-20.0, -20.0, 0.4, nodes, tau.value(a))) <= 1e-9 * g2_peak);
    CHECK(std::abs(ghz.at(a) - oracle::g3_ghz(-20.0, 0.4, nodes, tau.value(a))) <= 1e-9 * ghz_peak);
    for (std::size_t b = 0; b < tau.count(); b += 2)
      CHECK(std::abs(g3.at(a, b) - oracle::g3_w(-20.0, -20.0, 0.4, nodes, tau.value(a), tau.value(b))) <=
            1e-9 * g3_peak);
  }
}

TEST_CASE("conditional line matches the surface along the anti-diagonal") {
  const QuadratureSpec quad{256, 6.4};
  const Grid1D tau(0.0, 0.5, 41);
  const auto surface = g3_w_temporal(kFig1, kG, kG, kG, quad, tau, tau, {Method::direct, false});
  const auto line = g3_w_conditional(kFig1, kG, kG, kG, quad, tau, false);
  for (std::size_t a = 0; a < tau.count(); ++a)
    CHECK(std::abs(line.at(a) - surface.at(a, tau.count() - 1 - a)) <= 1e-10 * surface.max_value());
}

TEST_CASE("G3 is symmetric under exchange of the outer photons") {
  const QuadratureSpec quad{256, 6.4};
  const Grid1D tau(0.0, 0.5, 81);
  const auto s = g3_w_temporal(kFig1, kG, kG, kG, quad, tau, tau);
  double worst = 0.0;
  for (std::size_t a = 0; a < tau.count(); ++a)
    for (std::size_t b = 0; b < tau.count(); ++b) worst = std::max(worst, std::abs(s.at(a, b) - s.at(b, a)));
  CHECK(worst <= 1e-10);
  const std::size_t peak = s.argmax();
  CHECK(tau.value(peak / tau.count()) == doctest::Approx(10.0));
  CHECK(tau.value(peak % tau.count()) == doctest::Approx(10.0));
}

TEST_CASE("a single-node filter removes all delay dependence") {
  const QuadratureSpec quad{257, 6.4};
  const double dnu = 12.8 / 256;
  const auto narrow = FilterSpec::rectangular(0.4 * dnu, 0.0);
  const Grid1D tau(-20.0, 0.25, 161);
  const auto g2 = g2_w_temporal(kFig1, narrow, kG, quad, tau, {Method::fft, false});
  CHECK(relative_variation(g2.values()) < 1e-12);
}

TEST_CASE("the degenerate-state second order is delay independent") {
  const Grid1D tau(0.0, 0.25, 161);
  const QuadratureSpec quad{};
  const auto curve = g2_ghz_temporal_curve(kFig1, kG, kG, quad, tau, false);
  CHECK(relative_variation(curve.values()) < 1e-12);
  CHECK(curve.at(0) == doctest::Approx(g2_ghz_temporal(kFig1, kG, kG, quad)).epsilon(1e-13));
}

TEST_CASE("Parseval over one period of the degenerate-state transform") {
  const QuadratureSpec quad{256, 6.4};
  const double dnu = 12.8 / 255;
  const double period = std::numbers::pi / dnu;
  const Grid1D tau(0.0, period / 256, 256);
  const auto g3 = g3_ghz_temporal(kFig1, kG, kG, quad, tau, {Method::fft, false});
  const auto q = fourier::trapezoid(6.4, 256);
  double spectral = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    spectral += std::norm(q.weights[i] * ghz_spectral_amplitude(kFig1, kG, kG, q.node(i)));
  double temporal = 0.0;
  for (double v : g3.values()) temporal += v;
  CHECK(temporal == doctest::Approx(256.0 * spectral).epsilon(1e-10));
}

TEST_CASE("widths converge as the quadrature is refined") {
  const Grid1D tau(0.0, 0.25, 161);
  double previous = 0.0, previous_step = 0.0;
  for (std::size_t n : {256u, 512u, 1024u}) {
    const double w = fwhm(g3_w_conditional(kFig1, kG, kG, kG, {n, 6.4}, tau));
    if (previous > 0.0) {
      const double step = std::abs(w - previous);
      CHECK(step / w < 1e-3);
      if (previous_step > 0.0) CHECK(step <= previous_step);
      previous_step = step;
    }
    previous = w;
  }
}

TEST_CASE("transverse widths follow the Gaussian closed form") {
  const Grid1D rho(-5.0, 0.01, 1001);
  for (double a : {0.5, 1.0, 2.0}) {
    const TransverseWindow window(a);
    // |int exp(-x^2/a^2) e^{i x rho}|^2 ~ exp(-a^2 rho^2 / 2)
    const double expected = 2.0 * std::sqrt(2.0 * std::log(2.0)) / a;
    if (expected > 4.0) continue;
    CHECK(fwhm(single_window_spatial(window, rho)) == doctest::Approx(expected).epsilon(1e-3));
    CHECK(fwhm(g3_ghz_spatial(window, rho)) == doctest::Approx(expected / 2.0).epsilon(1e-2));
    CHECK(fwhm(g2_w_spatial(window, rho)) == doctest::Approx(expected).epsilon(1e-3));
  }
}

TEST_CASE("two transverse axes keep the one-axis shape") {
  const Grid1D rho(-3.0, 0.05, 121);
  const auto one = single_window_spatial(TransverseWindow(1.0, 1), rho);
  const auto two = single_window_spatial(TransverseWindow(1.0, 2), rho);
  CHECK(max_abs_diff(one.values(), two.values()) < 1e-12);
  CHECK(g2_ghz_spatial(TransverseWindow(1.0, 2)) ==
        doctest::Approx(std::pow(g2_ghz_spatial(TransverseWindow(1.0, 1)), 2)));
  const auto curve = g2_ghz_spatial_curve(TransverseWindow(1.0), rho, false);
  CHECK(relative_variation(curve.values()) < 1e-12);
}

TEST_CASE("normalization is idempotent") {
  const Grid1D tau(0.0, 0.5, 81);
  const auto s = g3_w_temporal(kFig1, kG, kG, kG, {256, 6.4}, tau, tau);
  CHECK(s.max_value() == 1.0);
  CHECK(normalize_to_peak(s).values() == s.values());
  const auto raw = g2_w_temporal(kFig1, kG, kG, {256, 6.4}, tau, {Method::fft, false});
  const auto once = normalize_to_peak(raw);
  CHECK(normalize_to_peak(once).values() == once.values());
}

TEST_CASE("results do not depend on the thread count") {
  const Grid1D tau(0.0, 0.25, 161);
  const QuadratureSpec quad{512, 6.4};
  setenv("TRIPHOTON_THREADS", "1", 1);
  const auto a1 = g2_w_temporal(kFig1, kG, kG, quad, tau);
  const auto b1 = g3_w_conditional(kFig1, kG, kG, kG, quad, tau);
  setenv("TRIPHOTON_THREADS", "4", 1);
  const auto a4 = g2_w_temporal(kFig1, kG, kG, quad, tau);
  const auto b4 = g3_w_conditional(kFig1, kG, kG, kG, quad, tau);
  unsetenv("TRIPHOTON_THREADS");
  CHECK(a1.values() == a4.values());
  CHECK(b1.values() == b4.values());
}

TEST_CASE("error reporting") {
  const Grid1D tau(0.0, 0.25, 161);
  CHECK_THROWS_AS(g2_w_temporal(kFig1, FilterSpec::gaussian(2.0), kG, {1024, 6.4}, tau), ConfigurationError);
  CHECK_THROWS_AS(g2_w_temporal(PhaseMatchConfig(-2.0, -2.0), kG, kG, {1024, 6.4}, tau), ConfigurationError);
  CHECK_NOTHROW(g2_w_temporal(kFig1, FilterSpec::rectangular(50.0), kG, {64, 6.4}, tau));

  const Grid1D axis(0.0, 1.0, 5);
  const CorrelationSurface flat(Kind::g2_temporal, State::w111, {axis}, {1, 1, 1, 1, 1}, true);
  CHECK_THROWS_AS(fwhm(flat), AmbiguousWidth);
  const CorrelationSurface twin(Kind::g2_temporal, State::w111, {axis}, {1, 0, 1, 0, 1}, true);
  try {
    fwhm(twin);
    FAIL("expected AmbiguousWidth");
  } catch (const AmbiguousWidth& e) {
    CHECK(e.crossings().size() == 4);
  }
  const CorrelationSurface zero(Kind::g2_temporal, State::w111, {axis}, {0, 0, 0, 0, 0}, false);
  CHECK_THROWS_AS(normalize_to_peak(zero), DegenerateInput);
  CHECK_THROWS_AS(CorrelationSurface(Kind::g2_temporal, State::w111, {axis}, {0, -1, 0, 0, 0}, false),
                  InvalidArgument);
  CHECK_THROWS_AS(CorrelationSurface(Kind::g2_temporal, State::w111, {axis}, {0, 0.5, 0, 0, 0}, true),
                  InvalidArgument);
  CHECK_THROWS_AS(CorrelationSurface(Kind::g2_temporal, State::w111, {axis}, {0, 1}, false), InvalidArgument);
}

TEST_CASE("fwhm interpolates linearly between samples") {
  const Grid1D axis(0.0, 1.0, 5);
  const CorrelationSurface tri(Kind::g2_temporal, State::w111, {axis}, {0, 0.5, 1, 0.5, 0}, true);
  CHECK(fwhm(tri) == doctest::Approx(2.0));
  const CorrelationSurface tent(Kind::g2_temporal, State::w111, {axis}, {0, 0.25, 1, 0.75, 0}, true);
  const auto c = half_max_crossings(tent);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == doctest::Approx(1.0 + 0.25 / 0.75));
  CHECK(c[1] == doctest::Approx(3.0 + 0.25 / 0.75));
}
