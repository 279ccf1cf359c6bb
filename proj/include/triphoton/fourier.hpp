#pragma once

// Oscillatory sums of the form
//
//   out[m] = sum_n in[n] * exp(i * scale * x_n * y_m)
//
// over uniform node axes x and uniform output axes y. Two routes compute the
// same finite sum: a Bluestein chirp-z transform (FFT based, exact on any
// uniform output grid) and a direct per-term evaluation used as the oracle.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "triphoton/grid.hpp"

namespace triphoton::fourier {

using Complex = std::complex<double>;

enum class Method { fft, direct };

// Uniform nodes on [-half_span, half_span] with composite trapezoid weights.
struct Quadrature {
  Grid1D axis;
  std::vector<double> weights;

  std::size_t size() const noexcept { return axis.count(); }
  double node(std::size_t i) const noexcept { return axis.value(i); }
};

Quadrature trapezoid(double half_span, std::size_t n);

class FourierSum {
 public:
  FourierSum(const Grid1D& nodes, const Grid1D& outputs, double scale, Method method);
  ~FourierSum();
  FourierSum(FourierSum&&) noexcept;
  FourierSum& operator=(FourierSum&&) noexcept;

  std::size_t input_size() const noexcept { return n_in_; }
  std::size_t output_size() const noexcept { return n_out_; }

  // Thread-safe; in.size() == input_size(), out.size() == output_size().
  void apply(std::span<const Complex> in, std::span<Complex> out) const;

  struct Impl;

 private:
  std::size_t n_in_;
  std::size_t n_out_;
  std::unique_ptr<Impl> impl_;
};

std::vector<Complex> transform(std::span<const Complex> samples, const Grid1D& nodes, const Grid1D& outputs,
                               double scale, Method method);

// Two-dimensional separable kernel exp(i * scale * (x_i * y_a + z_k * w_b)).
// samples are row-major [i][k]; the result is row-major [a][b].
std::vector<Complex> transform_2d(std::span<const Complex> samples, const Grid1D& x_nodes, const Grid1D& z_nodes,
                                  const Grid1D& y_outputs, const Grid1D& w_outputs, double scale, Method method);

}  // namespace triphoton::fourier
