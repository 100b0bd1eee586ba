#include "fraclab/special_functions.hpp"

#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fraclab/errors.hpp"

namespace fraclab {
namespace {

constexpr double kPi = std::numbers::pi;

bool is_pole(double x) { return x <= 0.0 && x == std::floor(x); }

// log|1/Gamma(x)| and its sign, via reflection for negative x.
// Caller guarantees x is not a pole.
double log_abs_rgamma(double x, int* sign) {
  if (x > 0.0) {
    *sign = 1;
    return -std::lgamma(x);
  }
  // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
  const double s = boost::math::sin_pi(x);
  *sign = s > 0.0 ? 1 : -1;
  return std::lgamma(1.0 - x) + std::log(std::abs(s)) - std::log(kPi);
}

void check_point(std::span<const double> x, int dim) {
  if (static_cast<int>(x.size()) != dim) {
    std::ostringstream os;
    os << "position has " << x.size() << " components, expected " << dim;
    throw DomainError(os.str());
  }
  for (double v : x)
    if (!std::isfinite(v)) throw DomainError("position must be finite");
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

double riesz_power_coeff(const RieszCoeffQuery& q) {
  if (q.d < 1) throw ParameterError("dimension must be at least 1");
  if (!(q.A > 0.0 && q.A < q.d)) throw ParameterError("decay exponent A must lie in (0, d)");
  if (!(q.lam > 0.0 && q.lam <= 2.0)) throw ParameterError("lambda must lie in (0, 2]");
  const double a1 = 0.5 * (q.A + q.lam);
  const double a2 = 0.5 * (q.d - q.A);
  const double b1 = 0.5 * q.A;
  const double b2 = 0.5 * (q.d - q.A - q.lam);
  if (is_pole(a1)) throw SingularParameterError("(A+lam)/2", a1);
  if (is_pole(a2)) throw SingularParameterError("(d-A)/2", a2);
  if (is_pole(b1)) throw SingularParameterError("A/2", b1);
  if (is_pole(b2)) throw SingularParameterError("(d-A-lam)/2", b2);
  return std::pow(2.0, q.lam) * std::tgamma(a1) * std::tgamma(a2) * rgamma(b1) * rgamma(b2);
}

double sphere_surface(int dim) {
  if (dim < 1) throw ParameterError("dimension must be at least 1");
  return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double superposition_term(double sigma, const LevyParams& params, int n) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive");
  if (n < 1) throw ParameterError("series index starts at 1");
  const double g = params.dim - 1.0 - 0.5 * n * params.lam;
  if (is_pole(g)) return 0.0;
  int sign = 0;
  const double log_rg = log_abs_rgamma(g, &sign);
  const double log_mag = -0.5 * n * params.lam * std::log(sigma) +
                         (n / params.lam) * std::log(params.d_lam) - std::lgamma(n + 2.0) + log_rg;
  if (n & 1) sign = -sign;
  return sign * std::exp(log_mag);
}

double superposition_weight(double sigma, const LevyParams& params, int n_max) {
  params.validate();
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive");
  if (n_max < 1) throw ParameterError("truncation order must be at least 1");
  double sum = 0.0;
  for (int n = 1; n <= n_max; ++n) sum += superposition_term(sigma, params, n);
  return sphere_surface(params.dim) * sum;
}

double foxh_limit_gaussian(const LevyParams& params, double t, std::span<const double> x) {
  params.validate();
  if (params.gamma != 0.0 || params.lam != 2.0)
    throw PreconditionError("Gaussian limit requires gamma = 0 and lambda = 2");
  if (!(t > 0.0)) throw DomainError("time must be positive");
  check_point(x, params.dim);
  const double s = 4.0 * params.d_lam * t;
  return std::pow(kPi * s, -0.5 * params.dim) * std::exp(-norm2(x) / s);
}

double foxh_limit_cauchy(const LevyParams& params, double t, std::span<const double> x) {
  params.validate();
  if (params.gamma != 0.0 || params.lam != 1.0)
    throw PreconditionError("Cauchy limit requires gamma = 0 and lambda = 1");
  if (!(t > 0.0)) throw DomainError("time must be positive");
  check_point(x, params.dim);
  const double h = 0.5 * (params.dim + 1);
  const double w = params.d_lam * t;
  return std::tgamma(h) / std::pow(kPi, h) * w / std::pow(w * w + norm2(x), h);
}

}  // namespace fraclab
