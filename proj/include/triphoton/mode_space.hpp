#pragma once

// Frequency-bin discretization of the three-mode |1,1,1> and degenerate
// |1,2> states, and the two-photon states left after one photon is lost.
//
// All photons share one uniform bin grid. Photon 2 is placed in the bin
// nearest its conservation-determined frequency (nu2 = -nu1 - nu3, or
// nu2 = -2 nu1); on a uniform grid that is a fixed integer shift, rounded
// once with exact half-bin ties going to the lower bin. Amplitudes whose
// partner bin falls off the grid are zero.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "triphoton/qubit_toy.hpp"
#include "triphoton/spectra.hpp"

namespace triphoton::modes {

using Complex = std::complex<double>;
using qubit::DensityMatrix;
using spectra::FilterSpec;
using spectra::PhaseMatchConfig;

class ModeGrid {
 public:
  // Bin centers nu_min + i (nu_max - nu_min) / (n_bins - 1), rad/ps.
  ModeGrid(std::size_t n_bins, double nu_min, double nu_max);

  std::size_t n_bins() const noexcept { return n_bins_; }
  double nu_min() const noexcept { return nu_min_; }
  double nu_max() const noexcept { return nu_max_; }
  double spacing() const noexcept { return (nu_max_ - nu_min_) / static_cast<double>(n_bins_ - 1); }
  double center(std::size_t i) const noexcept { return nu_min_ + static_cast<double>(i) * spacing(); }

  // Bin index of the photon-2 partner for the index sum s (W: s = i + k,
  // GHZ: s = 2i); -1 if it lies off the grid.
  long partner_bin(long index_sum) const noexcept;

  bool operator==(const ModeGrid&) const = default;

 private:
  std::size_t n_bins_;
  double nu_min_;
  double nu_max_;
};

enum class TensorKind { w111, ghz12 };

// W: amplitudes A[i][k] over (nu1 bin, nu3 bin), row-major, partner j(i,k).
// GHZ: amplitudes B[i] over the shared degenerate bin, partner m(i).
class TriphotonTensor {
 public:
  // Zeroes off-grid entries and normalizes. Throws DegenerateInput if
  // nothing remains, InvalidArgument on a size mismatch.
  static TriphotonTensor w_from_amplitudes(const ModeGrid& grid, std::vector<Complex> amplitudes);
  static TriphotonTensor ghz_from_amplitudes(const ModeGrid& grid, std::vector<Complex> amplitudes);

  TensorKind kind() const noexcept { return kind_; }
  std::size_t n_bins() const noexcept { return n_bins_; }
  const std::vector<Complex>& amplitudes() const noexcept { return amplitudes_; }
  const std::vector<long>& partner() const noexcept { return partner_; }
  double squared_norm() const;

 private:
  TriphotonTensor(TensorKind kind, const ModeGrid& grid, std::vector<Complex> amplitudes);

  TensorKind kind_;
  std::size_t n_bins_;
  std::vector<Complex> amplitudes_;
  std::vector<long> partner_;
};

// A[i,k] ~ f1(nu1_i) f2(nu2) f3(nu3_k) Phi(x(nu1_i, nu3_k)), nu2 = -nu1_i - nu3_k.
TriphotonTensor build_w_discrete(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                 const FilterSpec& f3, const ModeGrid& grid);

// B[i] ~ f1(nu1_i)^2 f2(-2 nu1_i) Phi(-2 nu1_i t12).
TriphotonTensor build_ghz_discrete(const PhaseMatchConfig& cfg, const FilterSpec& f1, const FilterSpec& f2,
                                   const ModeGrid& grid);

// rho_12 = sum_k |chi_k><chi_k|, chi_k = sum_i A[i,k] |i>_1 |j(i,k)>_2.
DensityMatrix reduce_w_trace3(const TriphotonTensor& state, const ModeGrid& grid);

// rho = sum_i |B[i]|^2 |i, m(i)><i, m(i)|: tracing one degenerate photon
// fixes the mode of the other.
DensityMatrix reduce_ghz_trace_one_degenerate(const TriphotonTensor& state, const ModeGrid& grid);

// tr(rho^2).
double purity(const DensityMatrix& rho);

// Negativity across the photon 1 | photon 2 cut of a reduced pair state.
double pair_negativity(const DensityMatrix& rho);

}  // namespace triphoton::modes
