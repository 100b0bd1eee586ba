#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "fraclab/errors.hpp"
#include "fraclab/special_functions.hpp"

namespace fraclab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadTol = 1e-14;
// Beyond this |z| the asymptotic expansion is tried first.
constexpr double kAsymptoticFrom = 60.0;

// E_{1,beta}(z) via exp, expm1 or the Euler integral
//   E_{1,beta}(z) = 1/Gamma(beta-1) int_0^1 e^{z u} (1-u)^{beta-2} du   (beta > 1).
double ml_alpha_one(double beta, double z) {
  if (beta == 1.0) return std::exp(z);
  if (beta == 2.0) return z == 0.0 ? 1.0 : std::expm1(z) / z;
  if (beta < 1.0) {
    // E_{1,beta}(z) = 1/Gamma(beta) + z E_{1,beta+1}(z)
    return rgamma(beta) + z * ml_alpha_one(beta + 1.0, z);
  }
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double u, double uc) {
    // uc = 1 - u computed without cancellation near the right endpoint
    const double one_minus_u = (u > 0.5) ? uc : 1.0 - u;
    return std::exp(z * u) * std::pow(one_minus_u, beta - 2.0);
  };
  return integrator.integrate(f, 0.0, 1.0, kQuadTol) * rgamma(beta - 1.0);
}

}  // namespace

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 170.0) return std::exp(-std::lgamma(x));
  return 1.0 / std::tgamma(x);
}

namespace detail {

double ml_series_threshold(double alpha) { return std::pow(2.0, alpha); }

double ml_series(double alpha, double beta, double z) {
  if (z == 0.0) return rgamma(beta);
  const double log_abs = std::log(std::abs(z));
  double sum = 0.0;
  int small_run = 0;
  for (int k = 0; k < 5000; ++k) {
    const double arg = alpha * k + beta;
    double term;
    if (arg > 0.0) {
      term = std::exp(k * log_abs - std::lgamma(arg));
      if (z < 0.0 && (k & 1)) term = -term;
    } else {
      term = std::pow(z, k) * rgamma(arg);
    }
    sum += term;
    // Stop once terms are negligible and past the peak |z|^{1/alpha}.
    if (k * alpha > std::pow(std::abs(z), 1.0 / alpha) &&
        std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
  }
  return sum;
}

double ml_integral(double alpha, double beta, double z) {
  if (alpha == 1.0) return ml_alpha_one(beta, z);
  const double x = -z;
  if (!(x > 0.0)) throw DomainError("ml_integral requires a negative argument");
  if (beta >= 1.0 + alpha) {
    // E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z
    return (ml_integral(alpha, beta - alpha, z) - rgamma(beta - alpha)) / z;
  }
  // Hankel contour collapsed onto the negative real axis (no poles on the
  // principal sheet for 0 < alpha < 1 and z < 0):
  //   E(-x) = 1/pi int_0^inf e^{-r} r^{a-b} [r^a sin(pi b) - x sin(pi (a-b))]
  //           / (r^{2a} + 2 x r^a cos(pi a) + x^2) dr
  const double s_beta = std::sin(kPi * beta);
  const double s_diff = std::sin(kPi * (alpha - beta));
  const double c_alpha = std::cos(kPi * alpha);
  auto kernel = [=](double r) {
    if (r <= 0.0) return 0.0;
    const double ra = std::pow(r, alpha);
    const double den = ra * ra + 2.0 * x * ra * c_alpha + x * x;
    return std::exp(-r) * std::pow(r, alpha - beta) * (ra * s_beta - x * s_diff) / den;
  };

  // Split at the near-pole of the denominator, r^a = -x cos(pi a), when it
  // exists and is not exponentially suppressed.
  double split = 1.0;
  if (c_alpha < 0.0) {
    const double peak = std::pow(-x * c_alpha, 1.0 / alpha);
    if (peak < 80.0) split = peak;
  }
  boost::math::quadrature::tanh_sinh<double> finite;
  boost::math::quadrature::exp_sinh<double> tail;
  const double head = finite.integrate(kernel, 0.0, split, kQuadTol);
  const double rest = tail.integrate([&](double r) { return kernel(r); }, split,
                                     std::numeric_limits<double>::infinity(), kQuadTol);
  return (head + rest) / kPi;
}

double ml_asymptotic(double alpha, double beta, double z, bool* converged) {
  // E(-x) ~ sum_{k>=1} (-1)^{k+1} x^{-k} / Gamma(beta - alpha k)
  const double x = -z;
  double sum = 0.0;
  double last = std::numeric_limits<double>::infinity();
  double xk = 1.0;
  bool ok = false;
  for (int k = 1; k <= 60; ++k) {
    xk /= x;
    const double term = ((k & 1) ? 1.0 : -1.0) * xk * rgamma(beta - alpha * k);
    if (term == 0.0) continue;
    if (std::abs(term) > last) break;  // divergent tail of the asymptotic series
    sum += term;
    last = std::abs(term);
    if (std::abs(term) < 1e-16 * std::abs(sum)) {
      ok = true;
      break;
    }
  }
  if (converged) *converged = ok;
  return sum;
}

}  // namespace detail

double ml_eval(const MLArgs& args) {
  const double alpha = args.alpha;
  const double beta = args.beta;
  const double z = args.z;
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("Mittag-Leffler alpha must be positive");
  if (alpha > 1.0) throw ParameterError("Mittag-Leffler alpha must lie in (0, 1]");
  if (!std::isfinite(beta)) throw ParameterError("Mittag-Leffler beta must be finite");
  if (!std::isfinite(z)) throw DomainError("Mittag-Leffler argument must be finite");

  if (z >= 0.0 || -z < detail::ml_series_threshold(alpha)) {
    if (alpha == 1.0 && (beta == 1.0 || beta == 2.0)) return ml_alpha_one(beta, z);
    return detail::ml_series(alpha, beta, z);
  }
  if (alpha < 1.0 && -z > kAsymptoticFrom) {
    bool converged = false;
    const double v = detail::ml_asymptotic(alpha, beta, z, &converged);
    if (converged) return v;
  }
  return detail::ml_integral(alpha, beta, z);
}

}  // namespace fraclab
