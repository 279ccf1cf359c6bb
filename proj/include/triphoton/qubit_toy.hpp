#pragma once

// Finite-dimensional pure and mixed states over tensor-product spaces:
// GHZ/W fixtures, partial trace, partial transpose, PPT negativity and
// Uhlmann fidelity.
//
// Basis ordering is big-endian over subsystems: for dims {d0, d1, d2} the
// product state |a b c> sits at index (a * d1 + b) * d2 + c, so the qubit
// ket |abc> is index 4a + 2b + c.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace triphoton::qubit {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Dims = std::vector<std::size_t>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;

std::size_t product(const Dims& dims);

class PureState {
 public:
  // Throws InvalidArgument unless prod(dims) == size and |amplitudes| = 1.
  PureState(Vector amplitudes, Dims dims);

  const Vector& amplitudes() const noexcept { return amplitudes_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

 private:
  Vector amplitudes_;
  Dims dims_;
};

class DensityMatrix {
 public:
  // Throws InvalidArgument if the matrix is not square, does not match dims,
  // is not Hermitian, has trace != 1 or an eigenvalue below kEigenvalueFloor.
  DensityMatrix(Matrix matrix, Dims dims);

  static DensityMatrix from_pure(const PureState& psi);

  const Matrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  // Ascending eigenvalues; cached at construction.
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  Matrix matrix_;
  Dims dims_;
  Eigen::VectorXd eigenvalues_;
};

// (|000> + |111>)/sqrt(2) over dims {2,2,2}.
PureState make_ghz();

// (|100> + |010> + |001>)/sqrt(3) over dims {2,2,2}.
PureState make_w();

// Reduced state on the subsystems listed in `keep`, in that order.
// keep must be a nonempty proper subset of the subsystem indices.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

// Transpose on the subsystems in `side`; the result is Hermitian but in
// general not positive, hence a bare matrix.
Matrix partial_transpose(const DensityMatrix& rho, std::span<const std::size_t> side);

// Sum of |negative eigenvalues| of the partial transpose across the cut
// side | complement. side must be a nonempty proper subset.
double negativity(const DensityMatrix& rho, std::span<const std::size_t> side);

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, in [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

// Convex combination sum_i weights[i] * states[i]; weights must be
// nonnegative and sum to one, all states must share dims.
DensityMatrix mixture(std::span<const double> weights, std::span<const DensityMatrix> states);

}  // namespace triphoton::qubit
