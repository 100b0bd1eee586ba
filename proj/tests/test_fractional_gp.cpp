#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fraclab/errors.hpp"
#include "fraclab/exponents.hpp"
#include "fraclab/fractional_gp.hpp"

using namespace fraclab;

namespace {

// Shell-integrated mass of a radial profile by the trapezoid rule.
double radial_mass(const CondensateProfile& p) {
  const double surf = p.dim == 3 ? 4 * std::numbers::pi : p.dim == 2 ? 2 * std::numbers::pi : 2.0;
  double m = 0;
  for (std::size_t i = 1; i < p.r_values.size(); ++i) {
    const double r0 = p.r_values[i - 1], r1 = p.r_values[i];
    m += 0.5 * (r1 - r0) * (std::pow(r0, p.dim - 1) * p.rho_values[i - 1] + std::pow(r1, p.dim - 1) * p.rho_values[i]);
  }
  return surf * m;
}

}  // namespace

TEST_CASE("Thomas-Fermi GP profile") {
  TrapConfig t;
  t.samples = 20001;
  const auto p = tf_profile_gp(t);
  CHECK(p.central() == doctest::Approx(15.0 / (8 * std::numbers::pi)).epsilon(1e-14));
  for (std::size_t i = 0; i < p.r_values.size(); ++i)
    if (p.r_values[i] >= 1.0) CHECK(p.rho_values[i] == 0.0);
  for (double r : {0.99, 0.999}) CHECK(p.at(r) / (1 - r * r) == doctest::Approx(p.central()).epsilon(1e-3));
  CHECK(radial_mass(p) == doctest::Approx(1.0).epsilon(1e-6));
  for (int d : {1, 2, 3}) {
    t.dim = d;
    CHECK(radial_mass(tf_profile_gp(t)) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("Thomas-Fermi density normalizes exactly") {
  // Closed-form normalization against the Beta-function value.
  for (int d : {1, 2, 3})
    for (double tb : {0.3, 0.7, 1.0, 2.0}) {
      const double b = std::beta(0.5 * d, tb + 1);
      const double surf = d == 1 ? 2.0 : d == 2 ? 2 * std::numbers::pi : 4 * std::numbers::pi;
      CHECK(tf_central_density(d, tb, 2.5) * 0.5 * surf * b == doctest::Approx(2.5).epsilon(1e-12));
    }
}

TEST_CASE("FGP profile: border exponent and central depletion") {
  TrapConfig t;
  t.samples = 4001;
  const auto exps = physical_exponents(1.0);
  CHECK(trap_two_beta(exps) == doctest::Approx(0.7));
  const auto f = tf_profile_fgp(t, exps), g = tf_profile_gp(t);
  CHECK(std::abs(border_exponent(f, 0.9, 0.999) / 0.7 - 1) < 0.03);
  CHECK(border_exponent(g, 0.9, 0.999) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(f.central() < g.central());
  CHECK(f.central() / g.central() ==
        doctest::Approx(tf_central_density(3, 0.7, 1) / tf_central_density(3, 1.0, 1)).epsilon(1e-14));
  for (std::size_t i = 1; i < f.rho_values.size(); ++i) CHECK(f.rho_values[i] <= f.rho_values[i - 1]);

  // 2 beta = 1 reproduces the GP profile.
  const auto same = tf_profile_fgp(t, epsilon_expansion(0.0));
  CHECK(same.rho_values == g.rho_values);
}

TEST_CASE("vortex variant vanishes at the centre") {
  TrapConfig t;
  t.vortex = true;
  t.samples = 4001;
  const auto v = tf_profile_fgp(t, physical_exponents(1.0));
  CHECK(v.rho_values.front() == 0.0);
  CHECK(v.at(0.5) > 0.0);
  CHECK(radial_mass(v) == doctest::Approx(1.0).epsilon(1e-4));
  for (std::size_t i = 0; i < v.r_values.size(); ++i)
    if (v.r_values[i] >= 1.0) CHECK(v.rho_values[i] == 0.0);
}

TEST_CASE("trap configuration checks") {
  TrapConfig t;
  t.two_beta = 0.0;
  CHECK_THROWS_AS(t.validate(), ParameterError);
  t.two_beta = 1.0;
  t.r_b = -1;
  CHECK_THROWS_AS(t.validate(), ParameterError);
}

TEST_CASE("vortex exponent: both printed forms agree") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> dim(2.2, 5.0), eta(0.0, 0.4);
  for (int i = 0; i < 100; ++i) {
    const auto s = hyperscaling_set(dim(gen), eta(gen));
    const double a1 = (2 - s.eta.value) / (s.delta.value - 1);
    const double a2 = s.dim / 2 - 1 + s.eta.value / 2;
    CHECK(std::abs(a1 - a2) < 1e-12);
  }
  const auto v0 = vortex_solution(hyperscaling_set(3, 0.0), {});
  CHECK(v0.A == doctest::Approx(0.5).epsilon(1e-15));
  const auto v = vortex_solution(physical_exponents(1.0), {});
  CHECK(v.A == doctest::Approx(0.52).epsilon(1e-12));
  CHECK(std::abs(v.A - v.A_dimension) < 1e-12);
  CHECK(v.a > 0.0);
  CHECK(v.lam == doctest::Approx(1.96));
  // A non-hyperscaling delta is rejected.
  auto bad = physical_exponents(1.0);
  bad.delta = {bad.delta_series, Provenance::series};
  CHECK_THROWS_AS(vortex_solution(bad, {}), ExponentError);
}

TEST_CASE("vortex amplitude relation") {
  const auto v = vortex_solution(physical_exponents(1.0), {});
  // [(delta + 1) a^{delta-1} / 4] g_c = -C at mu = 1.
  const double delta = physical_exponents(1.0).delta.value;
  CHECK((delta + 1) * std::pow(v.a, delta - 1) / 4 * gp_coupling({}) == doctest::Approx(-v.riesz).epsilon(1e-12));
  CHECK(v.amplitude_relation == doctest::Approx(-v.riesz).epsilon(1e-12));
  MESSAGE("amplitude relation " << v.amplitude_relation << " against the quoted " << quoted::vortex_amplitude);
}

TEST_CASE("fgp residual of trivial fields") {
  const GridSpec g{5.0, 64, 2};
  const std::vector<double> zero(64 * 64, 0.0);
  const auto exps = physical_exponents(1.0);
  CHECK(fgp_residual(zero, exps, {}, g) == 0.0);
  CHECK_THROWS_AS(fgp_residual(zero, exps, {}, g, {0.0, 0.5, true}), AnnulusError);
  CHECK_THROWS_AS(fgp_residual(zero, exps, {}, g, {0.5, 0.4, false}), AnnulusError);
}

TEST_CASE("fgp operator reduces to the Laplacian of a Gaussian") {
  // eta = 0 and vanishing coupling: p^2 acting on exp(-r^2/2) in 2-D gives
  // (2 - r^2) exp(-r^2/2); at the maximum the value is 2.
  const GridSpec g{12.0, 256, 2};
  const int n = g.points;
  std::vector<double> psi(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = g.coordinate(i), y = g.coordinate(j);
      psi[i * n + j] = std::exp(-0.5 * (x * x + y * y));
    }
  const auto exps = hyperscaling_set(4, 0.0);
  CouplingConfig c;
  c.g_c = 1e-300;
  const auto t = fgp_operator(psi, exps, c, g);
  const int o = g.origin_index();
  CHECK(std::abs(t.kinetic[o * n + o] - 2.0) < 1e-6);
  CHECK(std::abs(t.total[o * n + o] - 2.0) < 1e-6);
  const int k = o + 20;
  const double r2 = g.coordinate(k) * g.coordinate(k);
  CHECK(std::abs(t.kinetic[k * n + o] - (2 - r2) * std::exp(-0.5 * r2)) < 1e-6);
}

TEST_CASE("vortex residual is small and falls under refinement") {
  const auto c = vortex_check(physical_exponents(1.0), {}, 1024, 10.0);
  MESSAGE("residual " << c.residual_coarse << " at N = " << c.points_coarse << ", " << c.residual_fine << " at N = "
                      << c.points_fine);
  CHECK(c.residual_fine < 1e-2);
  CHECK(c.residual_fine <= 0.5 * c.residual_coarse);
}

TEST_CASE("trap solver: classical GP limit") {
  TrapConfig t;
  const auto exps = hyperscaling_set(3, 0.0);
  auto gp = exps;
  gp.beta = {0.5, Provenance::input};
  const auto p = solve_fgp_trap(t, gp, {}, 1e-8);
  const auto ref = tf_profile_gp(t);
  for (std::size_t i = 0; i < p.r_values.size(); ++i)
    if (p.r_values[i] < 0.8) CHECK(std::abs(p.rho_values[i] / ref.at(p.r_values[i]) - 1) < 0.02);
  CHECK(p.at(1.0) > 0.0);
  CHECK(p.at(1.0) < 0.05 * p.central());
  CHECK(radial_mass(p) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("trap solver: eps = 1 interior, border smoothing, monotone energy") {
  TrapConfig t;
  const auto exps = physical_exponents(1.0);
  const auto p = solve_fgp_trap(t, exps, {}, 1e-8);
  const auto ref = tf_profile_fgp(t, exps);
  double worst = 0;
  for (std::size_t i = 0; i < p.r_values.size(); ++i)
    if (p.r_values[i] < 0.8) worst = std::max(worst, std::abs(p.rho_values[i] / ref.at(p.r_values[i]) - 1));
  CHECK(worst < 0.02);
  const double edge = p.at(1.0);
  CHECK(edge > 0.0);
  CHECK(edge < 0.05 * p.central());
  REQUIRE(p.energy_history.size() >= 2);
  for (std::size_t i = 1; i < p.energy_history.size(); ++i)
    CHECK(p.energy_history[i] <= p.energy_history[i - 1]);
  CHECK(p.kind == ProfileKind::fgp_full);

  // A second resolution agrees at the border within 10%.
  TrapSolverOptions fine;
  fine.points = 8192;
  const auto q = solve_fgp_trap(t, exps, {}, 1e-8, fine);
  CHECK(std::abs(q.at(1.0) / edge - 1) < 0.1);
}

TEST_CASE("trap solver reports non-convergence") {
  TrapConfig t;
  TrapSolverOptions o;
  o.max_iterations = 3;
  CHECK_THROWS_AS(solve_fgp_trap(t, physical_exponents(1.0), {}, 1e-12, o), ConvergenceError);
}

TEST_CASE("Wegner corrections and coherence length") {
  const auto exps = physical_exponents(1.0);
  CHECK(wegner_correction(10.0, exps, 1.0) == doctest::Approx(1 + std::pow(10.0, -0.8)).epsilon(1e-15));
  CHECK(wegner_correction(10.0, exps, 1.0) == doctest::Approx(1.1585).epsilon(1e-4));
  CHECK(wegner_correction(1e12, exps, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(wegner_kinetic_factor(10.0, 1.0, exps, 1.0) == doctest::Approx(wegner_correction(10.0, exps, 1.0)));
  CHECK(wegner_kinetic_factor(10.0, 2.0, exps, 1.0) == doctest::Approx(1 + std::pow(20.0, -0.8)));
  CHECK(coherence_length(0.001, exps) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(coherence_length(-0.001, exps, 2.0) == doctest::Approx(200.0).epsilon(1e-12));
  CHECK_THROWS_AS(wegner_correction(0.0, exps, 1.0), DomainError);
  CHECK_THROWS_AS(coherence_length(0.0, exps), DomainError);
}
