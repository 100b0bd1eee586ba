#pragma once

#include <cstddef>
#include <string>

namespace fraclab {

/// Parameters of the Levy process / fractional Fokker-Planck equation.
///
///  lam    Levy index, 0 < lam <= 2 (2 is Gaussian)
///  gamma  time-fractional deficit, the time derivative has order 1 - gamma
///  d_lam  generalized diffusion constant, units length^lam / time^{1-gamma}
///  dim    spatial dimension
struct LevyParams {
  double lam = 2.0;
  double gamma = 0.0;
  double d_lam = 1.0;
  int dim = 1;

  /// Throws ParameterError naming the offending field.
  void validate() const;

  /// Time-derivative order 1 - gamma.
  double time_order() const { return 1.0 - gamma; }

  /// Spatial decay scale (D t^{1-gamma})^{1/lam}.
  double decay_scale(double t) const;

  /// Additionally checks lam = 2 - eta and lam = 2 (1 - gamma) / z when both
  /// exponents are supplied. Throws ConsistencyError on mismatch.
  void validate_scaling(double z_dyn, double eta, double tol = 1e-9) const;
};

/// Uniform periodic grid spanning [-L, L) per axis with N points per axis.
struct GridSpec {
  double extent = 10.0;  // L
  int points = 256;      // N
  int dim = 1;

  void validate() const;

  double spacing() const { return 2.0 * extent / points; }
  double cell_volume() const;
  double nyquist() const;  // pi N / (2 L)
  std::size_t size() const;
  double coordinate(int index) const { return -extent + spacing() * index; }
  /// Index of the grid point nearest to the origin along one axis (N/2).
  int origin_index() const { return points / 2; }

  /// Throws GridResolutionError if the Nyquist momentum is below `cutoff`.
  void require_momentum(double cutoff) const;
};

std::string to_string(const LevyParams& p);

}  // namespace fraclab
