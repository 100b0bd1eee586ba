#pragma once

#include <limits>
#include <string>

namespace fraclab {

/// Where a field of an ExponentSet came from.
enum class Provenance { unset, input, derived, series, quoted };

/// Which epsilon the set was built from: D = 4 - eps (relativistic) or
/// D = 2 + eps (nonrelativistic).
enum class Convention { relativistic, nonrelativistic };

std::string to_string(Provenance p);
std::string to_string(Convention c);

/// Values the paper quotes as numbers rather than formulas.
namespace quoted {
inline constexpr double eta = 0.04;
inline constexpr double delta = 4.76;
inline constexpr double nu = 2.0 / 3.0;
inline constexpr double nu_two_minus_eta = 1.3;
inline constexpr double two_beta = 0.7;
inline constexpr double omega = 0.8;
inline constexpr double g_star = 0.503;
inline constexpr double g_c_nonrel = 6.7;
inline constexpr double g_c_rel = 27.0;
inline constexpr double vortex_amplitude = 0.2;
}  // namespace quoted

struct Exponent {
  double value = std::numeric_limits<double>::quiet_NaN();
  Provenance source = Provenance::unset;
  bool known() const { return source != Provenance::unset; }
};

struct ExponentSet {
  Exponent eta, delta, beta, nu, omega, z_dyn, gamma_t, lam;
  double dim = 3.0;
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  Convention convention = Convention::relativistic;

  // Truncated series values kept next to whatever the main fields hold.
  double eta_series = std::numeric_limits<double>::quiet_NaN();
  double delta_series = std::numeric_limits<double>::quiet_NaN();
  double nu_series = std::numeric_limits<double>::quiet_NaN();

  /// Sets a field. Overriding an `input` field with a different value throws
  /// ConsistencyError quoting both.
  void set(Exponent ExponentSet::*field, double value, Provenance p, const char* name);

  double two_beta() const { return 2.0 * beta.value; }
  double nu_two_minus_eta() const { return nu.value * (2.0 - eta.value); }
  double delta_hyperscaling() const;

  /// Asserts every relation whose ingredients are present and derived:
  /// lam = 2 - eta, lam = 2 (1 - gamma) / z, delta by hyperscaling,
  /// 2 beta = nu (D - 2 + eta). Throws ConsistencyError.
  void validate(double tol = 1e-9) const;
};

/// lam = 2 (1 - gamma) / z and eta = 2 - lam.
ExponentSet from_scaling(double gamma_t, double z_dyn);

/// delta = (D + 2 - eta) / (D - 2 + eta). Throws ExponentError when
/// D - 2 + eta <= 0 (at or below the lower critical dimension).
double hyperscaling_delta(double dim, double eta);

/// Inverse of hyperscaling_delta.
double eta_from_delta(double dim, double delta);

/// Truncated series around D = 4: eta = eps^2/50, delta = 3 + eps + 23 eps^2/50,
/// 2 beta = 1 - 3 eps/10, nu = (1 + eps/5)/(2 - eta), omega = 0.8, D = 4 - eps.
/// gamma = 0 and z follows from lam = 2 - eta. At eps = 1 nu takes the quoted
/// 2/3 (nu_series keeps the series value).
ExponentSet epsilon_expansion(double epsilon);

/// The set used for physical numbers at eps: epsilon_expansion with the quoted
/// eta = 0.04 at eps = 1 and delta from hyperscaling.
ExponentSet physical_exponents(double epsilon);

/// Set with eta, delta from hyperscaling, lam = 2 - eta in dimension D.
ExponentSet hyperscaling_set(double dim, double eta);

struct CouplingConfig {
  double g_star = quoted::g_star;
  double g_c = std::numeric_limits<double>::quiet_NaN();  // NaN: compute from g_star
  double mu_scale = 1.0;
  double delta = std::numeric_limits<double>::quiet_NaN();  // NaN: take from exponents
};

/// (2 g*)^{(delta-1)/2} (4 pi)^2 / 24, the strong coupling at mu = 1.
double coupling_gc(const ExponentSet& exps, const CouplingConfig& coupling);

struct AppendixExponents {
  double gamma_t;
  double z_dyn;
};

/// gamma = a eps and z = (1 - gamma)/(1 + gamma/3).
AppendixExponents appendix_exponents(double a, double epsilon);

}  // namespace fraclab
