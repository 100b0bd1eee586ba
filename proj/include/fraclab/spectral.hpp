#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fraclab/levy_params.hpp"

namespace fraclab {

/// Periodic pseudo-spectral machinery on an N^D grid spanning [-L, L)^D.
///
/// Momentum components are p = (pi / L) k with k in [-N/2, N/2). All
/// multipliers are radial: they receive |p| (and, where useful, the integer
/// |k|^2 so callers can memoize expensive evaluations).
class SpectralGrid {
public:
  explicit SpectralGrid(const GridSpec& grid);
  ~SpectralGrid();
  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;
  SpectralGrid(SpectralGrid&&) noexcept;
  SpectralGrid& operator=(SpectralGrid&&) noexcept;

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }

  /// Real field -> out = IFFT[ m(|p|) FFT[field] ]. `field` and `out` may alias.
  void apply_multiplier(std::span<const double> field, const std::function<double(double)>& m,
                        std::span<double> out) const;

  /// Multiplier m(|p|) at every flat index, m evaluated once per |k|^2.
  std::vector<double> multiplier_table(const std::function<double(double)>& m) const;

  /// out = IFFT[ table * FFT[field] ] with a precomputed multiplier_table.
  void apply_table(std::span<const double> field, std::span<const double> table,
                   std::span<double> out) const;

  /// Position-space function whose continuous Fourier transform is the radial
  /// spectrum phi(|p|), sampled on the grid as the periodic Fourier series
  ///   f(x_j) = (2L)^{-D} sum_k phi(|p_k|) exp(i p_k . x_j).
  /// phi is evaluated once per distinct |k|^2.
  std::vector<double> synthesize(const std::function<double(double)>& phi) const;

  /// Integer |k|^2 for a flat grid index (k folded into [-N/2, N/2)).
  long long k_squared(std::size_t flat_index) const;

  /// Multi-index helpers (row-major, last axis fastest).
  std::vector<int> unflatten(std::size_t flat) const;
  std::size_t flatten(std::span<const int> idx) const;

  /// Euclidean distance of grid point `flat` from the origin.
  double radius(std::size_t flat) const;

  /// Enforce the reflection symmetries x_i -> -x_i exactly by pairwise
  /// averaging, then average over axis transpositions.
  void symmetrize(std::span<double> field) const;

private:
  struct Impl;
  GridSpec grid_;
  std::unique_ptr<Impl> impl_;
};

/// Folded wave number of index j on an axis with N points: j for j < N/2,
/// j - N otherwise.
inline int folded_wavenumber(int j, int n) { return j < n / 2 ? j : j - n; }

}  // namespace fraclab
