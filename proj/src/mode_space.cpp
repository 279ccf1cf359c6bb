#include "triphoton/mode_space.hpp"

#include <cmath>

#include "triphoton/errors.hpp"

namespace triphoton::modes {

using qubit::Matrix;
using spectra::detuning_ghz;
using spectra::detuning_w;
using spectra::filter_eval;
using spectra::phi;

ModeGrid::ModeGrid(std::size_t n_bins, double nu_min, double nu_max)
    : n_bins_(n_bins), nu_min_(nu_min), nu_max_(nu_max) {
  if (n_bins_ < 2) throw InvalidArgument("ModeGrid: n_bins must be at least 2");
  if (!std::isfinite(nu_min_) || !std::isfinite(nu_max_) || !(nu_max_ > nu_min_))
    throw InvalidArgument("ModeGrid: need finite nu_min < nu_max");
}

long ModeGrid::partner_bin(long index_sum) const noexcept {
  // Exact partner position is -3 nu_min / spacing - index_sum.
  const double base = -3.0 * nu_min_ / spacing();
  const double floor_base = std::floor(base);
  long shift;
  if (std::abs(base - floor_base - 0.5) < 1e-9)
    shift = static_cast<long>(floor_base);
  else
    shift = static_cast<long>(std::floor(base + 0.5));
  const long j = shift - index_sum;
  return j >= 0 && j < static_cast<long>(n_bins_) ? j : -1;
}

TriphotonTensor::TriphotonTensor(TensorKind kind, const ModeGrid& grid, std::vector<Complex> amplitudes)
    : kind_(kind), n_bins_(grid.n_bins()), amplitudes_(std::move(amplitudes)) {
  const std::size_t n = n_bins_;
  const std::size_t expected = kind_ == TensorKind::w111 ? n * n : n;
  if (amplitudes_.size() != expected) throw InvalidArgument("TriphotonTensor: amplitude count does not match grid");

  partner_.resize(expected);
  for (std::size_t idx = 0; idx < expected; ++idx) {
    const long sum = kind_ == TensorKind::w111 ? static_cast<long>(idx / n + idx % n) : 2 * static_cast<long>(idx);
    partner_[idx] = grid.partner_bin(sum);
    if (partner_[idx] < 0) amplitudes_[idx] = 0.0;
  }

  const double norm2 = squared_norm();
  if (!(norm2 > 0.0)) throw DegenerateInput("TriphotonTensor: no amplitude survives on the grid");
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : amplitudes_) a *= scale;
}

TriphotonTensor TriphotonTensor::w_from_amplitudes(const ModeGrid& grid, std::vector<Complex> amplitudes) {
  return TriphotonTensor(TensorKind::w111, grid, std::move(amplitudes));
}

TriphotonTensor TriphotonTensor::ghz_from_amplitudes(const ModeGrid& grid, std::vector<Complex> amplitudes) {
  return TriphotonTensor(TensorKind::ghz12, grid, std::move(amplitudes));
}

double TriphotonTensor::squared_norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

TriphotonTensor build_w_discrete(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                 const FilterSpec& f3, const ModeGrid& grid) {
  const std::size_t n = grid.n_bins();
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double nu1 = grid.center(i);
      const double nu3 = grid.center(k);
      a[i * n + k] = filter_eval(f1, nu1) * filter_eval(f2, -nu1 - nu3) * filter_eval(f3, nu3) *
                     phi(detuning_w(nu1, nu3, cfg));
    }
  return TriphotonTensor::w_from_amplitudes(grid, std::move(a));
}

TriphotonTensor build_ghz_discrete(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                   const ModeGrid& grid) {
  const std::size_t n = grid.n_bins();
  std::vector<Complex> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double nu1 = grid.center(i);
    const double f = filter_eval(f1, nu1);
    b[i] = f * f * filter_eval(f2, -2.0 * nu1) * phi(detuning_ghz(nu1, cfg));
  }
  return TriphotonTensor::ghz_from_amplitudes(grid, std::move(b));
}

DensityMatrix reduce_w_trace3(const TriphotonTensor& state, const ModeGrid& grid) {
  if (state.kind() != TensorKind::w111) throw InvalidArgument("reduce_w_trace3: state is not a three-mode tensor");
  if (state.n_bins() != grid.n_bins()) throw InvalidArgument("reduce_w_trace3: grid does not match state");
  const auto n = static_cast<Eigen::Index>(grid.n_bins());
  const auto& a = state.amplitudes();
  const auto& j = state.partner();

  Matrix rho = Matrix::Zero(n * n, n * n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto ik = static_cast<std::size_t>(i * n + k);
      if (j[ik] < 0) continue;
      for (Eigen::Index ip = 0; ip < n; ++ip) {
        const auto ipk = static_cast<std::size_t>(ip * n + k);
        if (j[ipk] < 0) continue;
        rho(i * n + j[ik], ip * n + j[ipk]) += a[ik] * std::conj(a[ipk]);
      }
    }
  return DensityMatrix(std::move(rho), {grid.n_bins(), grid.n_bins()});
}

DensityMatrix reduce_ghz_trace_one_degenerate(const TriphotonTensor& state, const ModeGrid& grid) {
  if (state.kind() != TensorKind::ghz12)
    throw InvalidArgument("reduce_ghz_trace_one_degenerate: state is not a degenerate two-mode tensor");
  if (state.n_bins() != grid.n_bins())
    throw InvalidArgument("reduce_ghz_trace_one_degenerate: grid does not match state");
  const auto n = static_cast<Eigen::Index>(grid.n_bins());
  const auto& b = state.amplitudes();
  const auto& m = state.partner();

  Matrix rho = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (m[idx] < 0) continue;
    rho(i * n + m[idx], i * n + m[idx]) = std::norm(b[idx]);
  }
  return DensityMatrix(std::move(rho), {grid.n_bins(), grid.n_bins()});
}

double purity(const DensityMatrix& rho) { return rho.matrix().cwiseAbs2().sum(); }

double pair_negativity(const DensityMatrix& rho) {
  const std::size_t photon1[] = {0};
  return qubit::negativity(rho, photon1);
}

}  // namespace triphoton::modes
