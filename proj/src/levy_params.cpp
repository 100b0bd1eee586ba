#include "fraclab/levy_params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fraclab/errors.hpp"

namespace fraclab {

SingularParameterError::SingularParameterError(std::string argument, double value)
    : InputError("Gamma pole: " + argument + " = " + std::to_string(value) +
                 " is a non-positive integer"),
      argument_(std::move(argument)),
      value_(value) {}

void LevyParams::validate() const {
  if (!(lam > 0.0 && lam <= 2.0)) throw ParameterError("lambda must lie in (0, 2]");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ParameterError("gamma must lie in [0, 1)");
  if (!(d_lam > 0.0) || !std::isfinite(d_lam)) throw ParameterError("dlam must be positive");
  if (dim < 1) throw ParameterError("dim must be at least 1");
}

double LevyParams::decay_scale(double t) const {
  return std::pow(d_lam * std::pow(t, 1.0 - gamma), 1.0 / lam);
}

void LevyParams::validate_scaling(double z_dyn, double eta, double tol) const {
  validate();
  const double from_eta = 2.0 - eta;
  const double from_z = 2.0 * (1.0 - gamma) / z_dyn;
  if (std::abs(lam - from_eta) > tol || std::abs(lam - from_z) > tol) {
    std::ostringstream os;
    os << "scaling relation violated: lambda = " << lam << ", 2 - eta = " << from_eta
       << ", 2(1-gamma)/z = " << from_z;
    throw ConsistencyError(os.str());
  }
}

void GridSpec::validate() const {
  if (!(extent > 0.0) || !std::isfinite(extent)) throw ParameterError("grid extent must be positive");
  if (points < 64 || (points & (points - 1)) != 0)
    throw ParameterError("grid points must be a power of two and at least 64");
  if (dim < 1 || dim > 3) throw ParameterError("grid dim must be 1, 2 or 3");
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }

double GridSpec::nyquist() const { return std::numbers::pi * points / (2.0 * extent); }

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points);
  return n;
}

void GridSpec::require_momentum(double cutoff) const {
  if (nyquist() >= cutoff) return;
  int suggested = points;
  while (std::numbers::pi * suggested / (2.0 * extent) < cutoff) suggested *= 2;
  std::ostringstream os;
  os << "grid Nyquist momentum " << nyquist() << " is below the required cutoff " << cutoff
     << "; use at least " << suggested << " points";
  throw GridResolutionError(os.str(), suggested);
}

std::string to_string(const LevyParams& p) {
  std::ostringstream os;
  os << "lambda=" << p.lam << " gamma=" << p.gamma << " dlam=" << p.d_lam << " dim=" << p.dim;
  return os.str();
}

}  // namespace fraclab
