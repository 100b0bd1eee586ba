#pragma once

#include <span>
#include <string>
#include <vector>

#include "fraclab/exponents.hpp"
#include "fraclab/levy_params.hpp"

namespace fraclab {

/// Trap geometry in the profile variable r = R / R_b.
struct TrapConfig {
  double r_b = 1.0;
  int dim = 3;
  double n_total = 1.0;
  bool vortex = false;
  double two_beta = 1.0;
  double core_radius = 0.1;  // vortex core scale r_c
  double vortex_exponent = 0.5;
  double r_max = 1.2;
  int samples = 601;

  void validate() const;
};

enum class ProfileKind { gp_tf, fgp_tf, fgp_full, vortex };
std::string to_string(ProfileKind k);

struct CondensateProfile {
  std::vector<double> r_values;
  std::vector<double> rho_values;
  ProfileKind kind = ProfileKind::gp_tf;
  int dim = 3;
  double two_beta = 1.0;
  // Solver diagnostics (full solutions only).
  int iterations = 0;
  std::vector<double> energy_history;

  double at(double r) const;  // linear interpolation
  double central() const { return rho_values.empty() ? 0.0 : rho_values.front(); }
};

/// Central density of rho0 (1 - r^2)^{2 beta} normalized to n_total on the unit D-ball.
double tf_central_density(int dim, double two_beta, double n_total);

/// rho0 max(0, 1 - r^2), optionally times the vortex factor (then renormalized).
CondensateProfile tf_profile_gp(const TrapConfig& trap);

/// rho0 max(0, 1 - r^2)^{2 beta}, 2 beta from trap_two_beta(exps).
CondensateProfile tf_profile_fgp(const TrapConfig& trap, const ExponentSet& exps);

/// 2 beta of exps when beta is known, else nu (D - 2 + eta).
double trap_two_beta(const ExponentSet& exps);

struct VortexProfile {
  double a = 0.0;          // amplitude at mu = 1
  double A = 0.0;          // (2 - eta)/(delta - 1)
  double A_dimension = 0.0;  // D/2 - 1 + eta/2
  int dim_perp = 2;
  double lam = 2.0;
  double riesz = 0.0;               // C(d, A, lam)
  double amplitude_relation = 0.0;  // [(delta+1) a^{delta-1}/4] g_c = -C
  double coupling = 0.0;            // (delta+1) g_c / (4 mu^eta)
};

/// Power-law vortex a |x_perp|^{-A} of the fractional GP equation. Throws
/// ExponentError unless delta satisfies hyperscaling and both formulas for A
/// agree to 1e-12.
VortexProfile vortex_solution(const ExponentSet& exps, const CouplingConfig& coupling);

/// Coupling g_c used in the GP equation: coupling.g_c, or the quoted
/// relativistic value when unset.
double gp_coupling(const CouplingConfig& coupling);

/// Smooth 2-D sample of the vortex: a (r^2 + r_c^2)^{-A/2} with r_c =
/// core_cells * h, blended between window_start*L and window_end*L into the
/// constant a (window_end L)^{-A}.
std::vector<double> vortex_field(const VortexProfile& v, const GridSpec& grid, double core_cells = 8.0,
                                 double window_start = 0.85, double window_end = 1.0);

/// Fractional GP operator (p^2)^{lam/2} psi + K |psi|^{delta-1} psi, K =
/// (delta+1) g_c / (4 mu^eta), evaluated spectrally on the grid.
struct FgpTerms {
  std::vector<double> kinetic;
  std::vector<double> total;
};
FgpTerms fgp_operator(std::span<const double> psi, const ExponentSet& exps,
                      const CouplingConfig& coupling, const GridSpec& grid);

struct Annulus {
  double inner = 0.0;  // fractions of the grid extent L
  double outer = 1e300;
  bool singular = false;  // field is singular at the origin
};

/// ||operator(psi)|| / ||kinetic(psi)|| over grid points with inner L <= |x| <= outer L.
/// Zero for the zero field. Throws AnnulusError when a singular field's
/// annulus reaches the origin or the annulus selects no points.
double fgp_residual(std::span<const double> psi, const ExponentSet& exps,
                    const CouplingConfig& coupling, const GridSpec& grid,
                    const Annulus& annulus = {});

struct VortexCheck {
  VortexProfile vortex;
  double residual_coarse = 0.0;
  double residual_fine = 0.0;
  int points_coarse = 0;
  int points_fine = 0;
  double extent = 0.0;
};

/// Residual of the vortex field at N and 2N points per axis on [-L, L)^2.
VortexCheck vortex_check(const ExponentSet& exps, const CouplingConfig& coupling, int points,
                         double extent, const Annulus& annulus = {0.2, 0.5, true});

struct TrapSolverOptions {
  double kinetic = 1e-6;    // coefficient of the fractional kinetic term
  double extent = 1.5;      // grid half-width in units of r
  int points = 4096;        // per axis (radial line for D = 1, 3)
  double time_step = 0.2;   // initial gradient-flow step
  int max_iterations = 200000;
};

/// Ground state of  kinetic (p^2)^{lam/2} + r^2 + g rho^{1/(2 beta)}  at fixed
/// particle number by normalized gradient flow (semi-implicit kinetic term,
/// backtracking on energy increase). g puts the Thomas-Fermi border at r = 1.
/// Converged when the L2 change per unit step falls below tol.
CondensateProfile solve_fgp_trap(const TrapConfig& trap, const ExponentSet& exps,
                                 const CouplingConfig& coupling, double tol,
                                 const TrapSolverOptions& options = {});

/// 1 + c xi^{-omega}.
double wegner_correction(double xi, const ExponentSet& exps, double c);
/// 1 + c xi^{-omega} |p|^{-omega}.
double wegner_kinetic_factor(double xi, double p, const ExponentSet& exps, double c);
/// xi0 |t|^{-nu}.
double coherence_length(double reduced_temperature, const ExponentSet& exps, double xi0 = 1.0);

/// Least-squares slope of log rho against log(1 - r^2) over r in [r_lo, r_hi].
double border_exponent(const CondensateProfile& p, double r_lo, double r_hi);

}  // namespace fraclab
