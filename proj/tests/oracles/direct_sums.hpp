#pragma once

// Plain nested-loop evaluations of the correlation integrals, written from
// the defining formulas without the library's transform code.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using C = std::complex<double>;

struct Nodes {
  std::vector<double> x, w;
};

inline Nodes trapezoid(double span, std::size_t n) {
  Nodes q;
  const double d = 2.0 * span / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    q.x.push_back(-span + d * static_cast<double>(i));
    q.w.push_back(i == 0 || i + 1 == n ? 0.5 * d : d);
  }
  return q;
}

inline C phi(double x) {
  if (x == 0.0) return 1.0;
  return (1.0 - std::exp(C(0.0, -x))) / C(0.0, x);
}

inline double gauss(double sigma, double v) { return std::exp(-v * v / (2.0 * sigma * sigma)); }

// Unnormalized three-mode G3 at one (tau12, tau32), Gaussian filters.
inline double g3_w(double t12, double t32, double sigma, const Nodes& q, double tau12, double tau32) {
  C amp = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i)
    for (std::size_t k = 0; k < q.x.size(); ++k) {
      const double n1 = q.x[i], n3 = q.x[k];
      amp += q.w[i] * q.w[k] * gauss(sigma, n1) * gauss(sigma, n1 + n3) * gauss(sigma, n3) *
             phi(-n1 * t12 - n3 * t32) * std::exp(C(0.0, n1 * tau12 + n3 * tau32));
    }
  return std::norm(amp);
}

// Unnormalized three-mode G2 at tau12.
inline double g2_w(double t12, double t32, double sigma, const Nodes& q, double tau12) {
  double sum = 0.0;
  for (std::size_t k = 0; k < q.x.size(); ++k) {
    C inner = 0.0;
    for (std::size_t i = 0; i < q.x.size(); ++i) {
      const double n1 = q.x[i], n3 = q.x[k];
      inner += q.w[i] * gauss(sigma, n1) * gauss(sigma, n1 + n3) * phi(-n1 * t12 - n3 * t32) *
               std::exp(C(0.0, n1 * tau12));
    }
    sum += q.w[k] * std::norm(inner);
  }
  return sum;
}

// Unnormalized degenerate-state G3 at tau12.
inline double g3_ghz(double t12, double sigma, const Nodes& q, double tau12) {
  C amp = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    const double n1 = q.x[i];
    const double f = gauss(sigma, n1);
    amp += q.w[i] * f * f * f * phi(-2.0 * n1 * t12) * std::exp(C(0.0, 2.0 * n1 * tau12));
  }
  return std::norm(amp);
}

}  // namespace oracle
