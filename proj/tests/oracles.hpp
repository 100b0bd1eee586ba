// Independent reference computations for the unit and acceptance tests.
#pragma once

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fraclab/spectral.hpp"

namespace oracle {

using mp100 = boost::multiprecision::cpp_bin_float_100;
using mpc50 = boost::multiprecision::cpp_complex_50;
using mp50 = boost::multiprecision::cpp_bin_float_50;

// Fixed Talbot inversion (Abate & Valko) in 50-digit complex arithmetic.
inline double talbot(const std::function<mpc50(const mpc50&)>& F, double t, int M = 64) {
  const mp50 pi = boost::math::constants::pi<mp50>();
  const mp50 r = mp50(2 * M) / (5 * mp50(t));
  mp50 sum = 0.5 * real(F(mpc50(r)) * exp(r * t));
  for (int k = 1; k < M; ++k) {
    const mp50 th = mp50(k) * pi / M;
    const mp50 cot = cos(th) / sin(th);
    const mpc50 s = r * th * mpc50(cot, 1);
    const mpc50 sigma = mpc50(1, th + (th * cot - 1) * cot);
    sum += real(exp(s * t) * F(s) * sigma);
  }
  return static_cast<double>(r / M * sum);
}

// Reference E_{a,b}(z) for real z. The power series in 100-digit arithmetic
// for z >= 0 and while the cancellation (largest term about exp|z|^{1/a})
// leaves plenty of digits; beyond that, Talbot inversion of
// s^{a-b}/(s^a - z), whose value at t = 1 is E_{a,b}(z).
class MittagLeffler {
public:
  MittagLeffler(double a, double b) : a_(a), b_(b) {
    // For a = p/q, Gamma(a (k+q) + b) = Gamma(a k + b) (a k + b)_p, so only
    // the first q values need the (slow) multiprecision Gamma.
    int q = 1;
    while (q < 64 && std::abs(a * q - std::round(a * q)) > 1e-12) ++q;
    const int p = static_cast<int>(std::round(a * q));
    const bool rational = q < 64;
    const mp100 A = mp100(static_cast<long long>(std::llround(a * 1e12))) / mp100("1e12");
    for (int k = 0; k < kTerms; ++k) {
      const mp100 x = A * k + mp100(b);
      if (!rational || k < q) {
        rg_.push_back(1 / boost::math::tgamma(x));
      } else {
        mp100 poch = 1;
        for (int j = 0; j < p; ++j) poch *= x - p + j;
        rg_.push_back(rg_[k - q] / poch);
      }
    }
  }

  double operator()(double z) const {
    if (z >= 0.0 || std::pow(-z, 1.0 / a_) <= 60.0) {
      mp100 sum = 0, zk = 1;
      for (int k = 0; k < kTerms; ++k) {
        const mp100 term = zk * rg_[k];
        sum += term;
        if (k > 10 && abs(term) < mp100("1e-45") * abs(sum) && abs(z) < (a_ * k + b_)) return static_cast<double>(sum);
        zk *= z;
      }
      throw std::runtime_error("reference series did not converge");
    }
    const mpc50 a(a_), amb(a_ - b_), zz(z);
    return talbot([&](const mpc50& s) { return pow(s, amb) / (pow(s, a) - zz); }, 1.0);
  }

private:
  static constexpr int kTerms = 3000;
  double a_, b_;
  std::vector<mp100> rg_;
};

// Smooth cutoff: 1 below a, 0 above b.
inline double taper(double r, double a, double b) {
  if (r <= a) return 1.0;
  if (r >= b) return 0.0;
  const double s = (r - a) / (b - a);
  return 0.5 * (1.0 + std::cos(std::numbers::pi * s));
}

// Amplitude C of (-Laplacian)^{lam/2} |x|^{-A} = C |x|^{-A-lam} in d = 1, 2, 3,
// measured with FFTs: a tapered, core-regularized power law is transformed,
// and C r^{-A-lam} + b0 + b1 r^2 is least-squares fitted on an annulus (b0, b1
// absorb the smooth far-field truncation). d = 3 uses the odd radial line
// u = r f(r), for which the 3-D operator reduces to the 1-D one on u divided
// by r.
inline double riesz_fft(int d, double A, double lam) {
  const double L = 1.0, R0 = 0.5, R1 = 0.8;
  const double r_lo = d == 2 ? 0.05 : 0.02, r_hi = d == 2 ? 0.2 : 0.08;
  const int n = d == 2 ? 4096 : (1 << 20);
  fraclab::GridSpec g{L, n, d == 2 ? 2 : 1};
  fraclab::SpectralGrid sg(g);
  const double h = g.spacing(), rc = 4.0 * h;
  std::vector<double> f(g.size()), out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double r;
    double sign = 1.0;
    if (d == 2) {
      const auto idx = sg.unflatten(i);
      r = std::hypot(g.coordinate(idx[0]), g.coordinate(idx[1]));
    } else {
      const double x = g.coordinate(static_cast<int>(i));
      r = std::abs(x);
      if (d == 3) sign = x;  // u = r f, odd
    }
    f[i] = sign * std::pow(r * r + rc * rc, -0.5 * A) * taper(r, R0, R1);
  }
  sg.apply_multiplier(f, [lam](double p) { return std::pow(p, lam); }, out);
  // Weighted least squares for y = sum_j c_j phi_j(r): the power law, the
  // point-source terms left by the core regularization, and a smooth
  // far-field remainder.
  constexpr int K = 6;
  double M[K][K + 1] = {};
  for (std::size_t i = 0; i < g.size(); ++i) {
    double r, y;
    if (d == 2) {
      const auto idx = sg.unflatten(i);
      r = std::hypot(g.coordinate(idx[0]), g.coordinate(idx[1]));
      y = out[i];
    } else {
      const double x = g.coordinate(static_cast<int>(i));
      if (x <= 0.0) continue;
      r = x;
      y = d == 3 ? out[i] / x : out[i];
    }
    if (r < r_lo || r > r_hi) continue;
    const double phi[K] = {std::pow(r, -A - lam), std::pow(r, -d - lam), std::pow(r, -d - lam - 2.0), 1.0,
                           r * r, r * r * r * r};
    const double w = 1.0 / (phi[0] * phi[0]);
    for (int a = 0; a < K; ++a) {
      M[a][K] += w * phi[a] * y;
      for (int b = 0; b < K; ++b) M[a][b] += w * phi[a] * phi[b];
    }
  }
  // Gaussian elimination with partial pivoting.
  for (int c = 0; c < K; ++c) {
    int piv = c;
    for (int r = c + 1; r < K; ++r)
      if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
    for (int k = 0; k <= K; ++k) std::swap(M[c][k], M[piv][k]);
    for (int r = 0; r < K; ++r) {
      if (r == c) continue;
      const double f = M[r][c] / M[c][c];
      for (int k = c; k <= K; ++k) M[r][k] -= f * M[c][k];
    }
  }
  return M[0][K] / M[0][0];
}

}  // namespace oracle
