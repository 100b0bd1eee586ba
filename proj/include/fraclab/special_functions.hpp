#pragma once

#include <span>

#include "fraclab/levy_params.hpp"

namespace fraclab {

/// Arguments of the two-parameter Mittag-Leffler function E_{alpha,beta}(z).
struct MLArgs {
  double alpha = 1.0;
  double beta = 1.0;
  double z = 0.0;
};

/// E_{alpha,beta}(z) for 0 < alpha <= 1 and real z.
///
/// Positive and small negative arguments use the power series. Larger negative
/// arguments use the Hankel-contour integral collapsed onto the negative real
/// axis, and very large ones the algebraic asymptotic expansion. Accurate to
/// about 1e-12 relative on the tested range [-50, 5].
double ml_eval(const MLArgs& args);

namespace detail {
// Exposed for the crossover tests; no argument checking beyond ml_eval's.
double ml_series(double alpha, double beta, double z);
double ml_integral(double alpha, double beta, double z);
double ml_asymptotic(double alpha, double beta, double z, bool* converged);
double ml_series_threshold(double alpha);
}  // namespace detail

/// 1 / Gamma(x), zero at the poles x = 0, -1, -2, ...
double rgamma(double x);

struct RieszCoeffQuery {
  int d = 1;
  double A = 0.5;
  double lam = 2.0;
};

/// Eigenvalue C(d, A, lam) of the Riesz operator (-Laplacian)^{lam/2} on the
/// radial power law |x|^{-A} in d dimensions:
///   (-Laplacian)^{lam/2} |x|^{-A} = C |x|^{-A-lam}.
/// Throws SingularParameterError when a Gamma argument is a non-positive
/// integer.
double riesz_power_coeff(const RieszCoeffQuery& q);

/// Partial sum of the Gaussian-superposition weight series, transcribed term
/// for term:
///   f(sigma) = S_D sum_{n=1}^{n_max} (-1)^n sigma^{-n lam/2} D^{n/lam}
///              / [ (n+1)! Gamma(D - 1 - n lam/2) ]
/// Terms whose Gamma factor sits on a pole vanish (reciprocal-Gamma
/// convention).
double superposition_weight(double sigma, const LevyParams& params, int n_max);

/// Single term n of the series above (without S_D).
double superposition_term(double sigma, const LevyParams& params, int n);

/// Surface area of the unit sphere in D dimensions, 2 pi^{D/2} / Gamma(D/2).
double sphere_surface(int dim);

/// Closed-form density for gamma = 0, lam = 2:
/// (4 pi D t)^{-D/2} exp(-|x|^2 / 4 D t).
double foxh_limit_gaussian(const LevyParams& params, double t, std::span<const double> x);

/// Closed-form density for gamma = 0, lam = 1 (multivariate Cauchy):
/// Gamma((D+1)/2) / pi^{(D+1)/2} * D t / [ (D t)^2 + |x|^2 ]^{(D+1)/2}.
double foxh_limit_cauchy(const LevyParams& params, double t, std::span<const double> x);

}  // namespace fraclab
