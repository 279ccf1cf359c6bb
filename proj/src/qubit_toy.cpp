#include "triphoton/qubit_toy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "triphoton/errors.hpp"

namespace triphoton::qubit {

namespace {

// Offsets into the full index for every multi-index over `subsystems`,
// enumerated big-endian in the listed order.
std::vector<std::size_t> offsets(const Dims& dims, const std::vector<std::size_t>& subsystems) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t s = dims.size(); s-- > 1;) strides[s - 1] = strides[s] * dims[s];

  std::vector<std::size_t> out{0};
  for (std::size_t s : subsystems) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * dims[s]);
    for (std::size_t base : out)
      for (std::size_t digit = 0; digit < dims[s]; ++digit) next.push_back(base + digit * strides[s]);
    out = std::move(next);
  }
  return out;
}

// Validates a nonempty proper subset of [0, n) and returns it with its
// complement (ascending).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split(std::span<const std::size_t> subset,
                                                                    std::size_t n, const char* what) {
  std::vector<std::size_t> chosen(subset.begin(), subset.end());
  std::vector<bool> seen(n, false);
  for (std::size_t s : chosen) {
    if (s >= n) throw InvalidArgument(std::string(what) + ": subsystem index " + std::to_string(s) + " out of range");
    if (seen[s]) throw InvalidArgument(std::string(what) + ": duplicate subsystem index " + std::to_string(s));
    seen[s] = true;
  }
  if (chosen.empty() || chosen.size() == n)
    throw InvalidArgument(std::string(what) + ": subsystem set must be a nonempty proper subset");
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < n; ++s)
    if (!seen[s]) rest.push_back(s);
  return {std::move(chosen), std::move(rest)};
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

PureState::PureState(Vector amplitudes, Dims dims) : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (dims_.empty() || std::find(dims_.begin(), dims_.end(), 0u) != dims_.end())
    throw InvalidArgument("PureState: dims must be nonempty and positive");
  if (product(dims_) != dimension()) throw InvalidArgument("PureState: product of dims does not match amplitude count");
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance)
    throw InvalidArgument("PureState: amplitudes are not normalized");
}

DensityMatrix::DensityMatrix(Matrix matrix, Dims dims) : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("DensityMatrix: matrix is not square");
  if (dims_.empty() || std::find(dims_.begin(), dims_.end(), 0u) != dims_.end())
    throw InvalidArgument("DensityMatrix: dims must be nonempty and positive");
  if (product(dims_) != dimension()) throw InvalidArgument("DensityMatrix: product of dims does not match matrix size");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance)
    throw InvalidArgument("DensityMatrix: matrix is not Hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTolerance) throw InvalidArgument("DensityMatrix: trace is not one");
  eigenvalues_ = Eigen::SelfAdjointEigenSolver<Matrix>(matrix_, Eigen::EigenvaluesOnly).eigenvalues();
  if (eigenvalues_.minCoeff() < kEigenvalueFloor) throw InvalidArgument("DensityMatrix: matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.dims());
}

PureState make_ghz() {
  Vector a = Vector::Zero(8);
  a(0) = a(7) = 1.0 / std::sqrt(2.0);
  return PureState(std::move(a), {2, 2, 2});
}

PureState make_w() {
  Vector a = Vector::Zero(8);
  a(4) = a(2) = a(1) = 1.0 / std::sqrt(3.0);
  return PureState(std::move(a), {2, 2, 2});
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const Dims& dims = rho.dims();
  auto [kept, traced] = split(keep, dims.size(), "partial_trace");
  const auto off_keep = offsets(dims, kept);
  const auto off_trace = offsets(dims, traced);

  const auto dk = static_cast<Eigen::Index>(off_keep.size());
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = rho.matrix();
  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex sum = 0.0;
      for (std::size_t t : off_trace)
        sum += m(static_cast<Eigen::Index>(off_keep[r] + t), static_cast<Eigen::Index>(off_keep[c] + t));
      out(r, c) = sum;
    }

  Dims out_dims;
  for (std::size_t s : kept) out_dims.push_back(dims[s]);
  return DensityMatrix(std::move(out), std::move(out_dims));
}

Matrix partial_transpose(const DensityMatrix& rho, std::span<const std::size_t> side) {
  const Dims& dims = rho.dims();
  auto [a, b] = split(side, dims.size(), "partial_transpose");
  const auto off_a = offsets(dims, a);
  const auto off_b = offsets(dims, b);

  const Matrix& m = rho.matrix();
  Matrix out(m.rows(), m.cols());
  for (std::size_t ia : off_a)
    for (std::size_t ib : off_b)
      for (std::size_t ja : off_a)
        for (std::size_t jb : off_b)
          out(static_cast<Eigen::Index>(ia + ib), static_cast<Eigen::Index>(ja + jb)) =
              m(static_cast<Eigen::Index>(ja + ib), static_cast<Eigen::Index>(ia + jb));
  return out;
}

double negativity(const DensityMatrix& rho, std::span<const std::size_t> side) {
  const Matrix pt = partial_transpose(rho, side);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix>(pt, Eigen::EigenvaluesOnly).eigenvalues();
  double sum = 0.0;
  for (double v : ev)
    if (v < 0.0) sum -= v;
  return sum;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims() != sigma.dims()) throw InvalidArgument("fidelity: dimension mismatch");
  const Matrix root = psd_sqrt(rho.matrix());
  const Matrix inner = root * sigma.matrix() * root;
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix>(inner, Eigen::EigenvaluesOnly).eigenvalues();
  const double tr = ev.cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const Matrix& ma = a.matrix();
  const Matrix& mb = b.matrix();
  Matrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
  for (Eigen::Index i = 0; i < ma.rows(); ++i)
    for (Eigen::Index j = 0; j < ma.cols(); ++j)
      out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(std::move(out), std::move(dims));
}

DensityMatrix mixture(std::span<const double> weights, std::span<const DensityMatrix> states) {
  if (weights.size() != states.size() || states.empty())
    throw InvalidArgument("mixture: need one weight per state and at least one state");
  const Dims& dims = states.front().dims();
  Matrix sum = Matrix::Zero(states.front().matrix().rows(), states.front().matrix().cols());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (weights[i] < 0.0) throw InvalidArgument("mixture: negative weight");
    if (states[i].dims() != dims) throw InvalidArgument("mixture: dims differ between states");
    sum += weights[i] * states[i].matrix();
  }
  return DensityMatrix(std::move(sum), dims);
}

}  // namespace triphoton::qubit
