#include "fraclab/exponents.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fraclab/errors.hpp"

namespace fraclab {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::unset: return "unset";
    case Provenance::input: return "input";
    case Provenance::derived: return "derived";
    case Provenance::series: return "series";
    case Provenance::quoted: return "quoted";
  }
  return "unknown";
}

std::string to_string(Convention c) {
  return c == Convention::relativistic ? "relativistic" : "nonrelativistic";
}

void ExponentSet::set(Exponent ExponentSet::*field, double value, Provenance p, const char* name) {
  Exponent& e = this->*field;
  if (e.source == Provenance::input && p != Provenance::input && std::abs(e.value - value) > 1e-12) {
    std::ostringstream os;
    os << name << ": supplied value " << e.value << " conflicts with " << to_string(p)
       << " value " << value;
    throw ConsistencyError(os.str());
  }
  if (e.source == Provenance::input && p != Provenance::input) return;
  e.value = value;
  e.source = p;
}

double ExponentSet::delta_hyperscaling() const { return hyperscaling_delta(dim, eta.value); }

void ExponentSet::validate(double tol) const {
  auto fail = [](const std::string& what, double a, double b) {
    std::ostringstream os;
    os << what << ": " << a << " vs " << b;
    throw ConsistencyError(os.str());
  };
  if (lam.known() && eta.known() && std::abs(lam.value - (2.0 - eta.value)) > tol)
    fail("lambda = 2 - eta violated", lam.value, 2.0 - eta.value);
  if (lam.known() && z_dyn.known() && gamma_t.known()) {
    const double v = 2.0 * (1.0 - gamma_t.value) / z_dyn.value;
    if (std::abs(lam.value - v) > tol) fail("lambda = 2(1-gamma)/z violated", lam.value, v);
  }
  if (delta.source == Provenance::derived && eta.known()) {
    const double v = hyperscaling_delta(dim, eta.value);
    if (std::abs(delta.value - v) > tol) fail("hyperscaling violated", delta.value, v);
  }
  if (beta.source == Provenance::derived && nu.known() && eta.known()) {
    const double v = nu.value * (dim - 2.0 + eta.value);
    if (std::abs(2.0 * beta.value - v) > tol) fail("2 beta = nu (D-2+eta) violated", 2.0 * beta.value, v);
  }
}

ExponentSet from_scaling(double gamma_t, double z_dyn) {
  if (!(z_dyn > 0.0) || !std::isfinite(z_dyn)) throw ParameterError("z must be positive");
  if (!(gamma_t >= 0.0 && gamma_t < 1.0)) throw ParameterError("gamma must lie in [0, 1)");
  const double lam = 2.0 * (1.0 - gamma_t) / z_dyn;
  if (!(lam > 0.0 && lam <= 2.0 + 1e-12)) {
    std::ostringstream os;
    os << "unphysical exponents: lambda = 2(1-gamma)/z = " << lam << " lies outside (0, 2]";
    throw ExponentError(os.str());
  }
  ExponentSet s;
  s.set(&ExponentSet::gamma_t, gamma_t, Provenance::input, "gamma");
  s.set(&ExponentSet::z_dyn, z_dyn, Provenance::input, "z");
  s.set(&ExponentSet::lam, lam, Provenance::derived, "lambda");
  s.set(&ExponentSet::eta, 2.0 - lam, Provenance::derived, "eta");
  return s;
}

double hyperscaling_delta(double dim, double eta) {
  const double den = dim - 2.0 + eta;
  if (!(den > 0.0)) {
    std::ostringstream os;
    os << "D - 2 + eta = " << den << " <= 0: at or below the lower critical dimension";
    throw ExponentError(os.str());
  }
  return (dim + 2.0 - eta) / den;
}

double eta_from_delta(double dim, double delta) {
  if (!(delta > -1.0 + 1e-300)) throw ExponentError("delta must exceed -1");
  return (dim + 2.0 - delta * (dim - 2.0)) / (delta + 1.0);
}

ExponentSet epsilon_expansion(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ParameterError("epsilon must lie in [0, 1]");
  const double e = epsilon;
  ExponentSet s;
  s.epsilon = e;
  s.dim = 4.0 - e;
  s.convention = Convention::relativistic;
  s.eta_series = e * e / 50.0;
  s.delta_series = 3.0 + e + 23.0 * e * e / 50.0;
  s.nu_series = (1.0 + e / 5.0) / (2.0 - s.eta_series);
  s.set(&ExponentSet::eta, s.eta_series, Provenance::series, "eta");
  s.set(&ExponentSet::delta, s.delta_series, Provenance::series, "delta");
  s.set(&ExponentSet::beta, 0.5 * (1.0 - 0.3 * e), Provenance::series, "beta");
  if (e == 1.0) s.set(&ExponentSet::nu, quoted::nu, Provenance::quoted, "nu");
  else s.set(&ExponentSet::nu, s.nu_series, Provenance::series, "nu");
  s.set(&ExponentSet::omega, quoted::omega, Provenance::quoted, "omega");
  s.set(&ExponentSet::gamma_t, 0.0, Provenance::input, "gamma");
  s.set(&ExponentSet::lam, 2.0 - s.eta.value, Provenance::derived, "lambda");
  s.set(&ExponentSet::z_dyn, 2.0 / s.lam.value, Provenance::derived, "z");
  return s;
}

ExponentSet physical_exponents(double epsilon) {
  ExponentSet s = epsilon_expansion(epsilon);
  if (epsilon == 1.0) {
    s.eta = {quoted::eta, Provenance::quoted};
    s.lam = {2.0 - quoted::eta, Provenance::derived};
    s.z_dyn = {2.0 / s.lam.value, Provenance::derived};
  }
  s.delta = {hyperscaling_delta(s.dim, s.eta.value), Provenance::derived};
  s.validate();
  return s;
}

ExponentSet hyperscaling_set(double dim, double eta) {
  ExponentSet s;
  s.dim = dim;
  s.set(&ExponentSet::eta, eta, Provenance::input, "eta");
  s.set(&ExponentSet::delta, hyperscaling_delta(dim, eta), Provenance::derived, "delta");
  s.set(&ExponentSet::lam, 2.0 - eta, Provenance::derived, "lambda");
  s.set(&ExponentSet::omega, quoted::omega, Provenance::quoted, "omega");
  s.set(&ExponentSet::gamma_t, 0.0, Provenance::input, "gamma");
  s.set(&ExponentSet::z_dyn, 2.0 / s.lam.value, Provenance::derived, "z");
  return s;
}

double coupling_gc(const ExponentSet& exps, const CouplingConfig& coupling) {
  if (!(coupling.g_star > 0.0)) throw ParameterError("g* must be positive");
  const double delta = std::isnan(coupling.delta) ? exps.delta.value : coupling.delta;
  if (!std::isfinite(delta)) throw ExponentError("delta is not set");
  const double four_pi = 4.0 * std::numbers::pi;
  return std::pow(2.0 * coupling.g_star, 0.5 * (delta - 1.0)) * four_pi * four_pi / 24.0;
}

AppendixExponents appendix_exponents(double a, double epsilon) {
  const double g = a * epsilon;
  if (!(g >= 0.0 && g < 0.5)) throw ParameterError("a * epsilon must lie in [0, 0.5)");
  return {g, (1.0 - g) / (1.0 + g / 3.0)};
}

}  // namespace fraclab
