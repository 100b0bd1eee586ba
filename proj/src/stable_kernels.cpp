// Bulk one-sided stable draws. Kept in its own translation unit so it can be
// compiled with vectorized math (libmvec); every other caller goes through
// the scalar path in levy_walks.cpp.
#include <cmath>
#include <cstddef>
#include <numbers>

namespace fraclab::kernels {

// uw: interleaved uniform pairs (u, w) in (0, 1).
// out[i] = scale^{1/a} * Kanter(uw[2i], uw[2i+1]).
// Only sines appear: a sin/cos pair of one argument would fuse into sincos,
// which has no vector variant.
#if defined(__GNUC__) && defined(__x86_64__) && !defined(__clang__)
__attribute__((target_clones("avx512f", "avx2", "default")))
#endif
void one_sided_kanter(const double* __restrict uw, double* __restrict out, std::size_t n, double a,
                      double scale) {
  const double inv_a = 1.0 / a;
  const double c = (1.0 - a) * inv_a;
  const double log_scale = inv_a * std::log(scale);
  const double pi = std::numbers::pi;
#pragma omp simd
  for (std::size_t i = 0; i < n; ++i) {
    const double U = pi * uw[2 * i];
    const double su = std::sin(U);
    const double sa = std::sin(a * U);
    const double s1a = std::sin((1.0 - a) * U);
    const double e = -std::log(uw[2 * i + 1]);
    out[i] = std::exp(std::log(sa) - inv_a * std::log(su) + c * (std::log(s1a) - std::log(e)) +
                      log_scale);
  }
}

}  // namespace fraclab::kernels
