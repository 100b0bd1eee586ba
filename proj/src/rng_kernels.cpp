// Bulk Philox uniforms, vectorized across counter blocks. No fast-math here:
// the exact integer-to-double conversion below depends on strict rounding.
#include <cstdint>
#include <cstring>

#include "fraclab/rng.hpp"

namespace fraclab::kernels {
namespace {

// Exact double of m < 2^53 from two 32-bit halves via the 2^52 bias trick;
// plain u64 -> double does not vectorize without AVX-512DQ.
inline double exact_double(std::uint64_t m) {
  constexpr std::uint64_t kBias = 0x4330000000000000ull;  // 2^52
  const std::uint64_t hb = kBias | (m >> 32), lb = kBias | (m & 0xffffffffull);
  double h, l;
  std::memcpy(&h, &hb, sizeof h);
  std::memcpy(&l, &lb, sizeof l);
  return (h - 0x1.0p52) * 0x1.0p32 + (l - 0x1.0p52);
}

}  // namespace

#if defined(__GNUC__) && defined(__x86_64__) && !defined(__clang__)
__attribute__((target_clones("avx512f", "avx2", "default")))
#endif
void philox_uniforms(std::uint32_t key0, std::uint32_t key1, std::uint64_t stream, std::uint64_t first_block,
                     std::size_t n_blocks, double* __restrict out) {
  constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
  const auto s0 = static_cast<std::uint32_t>(stream), s1 = static_cast<std::uint32_t>(stream >> 32);
#pragma omp simd
  for (std::size_t j = 0; j < n_blocks; ++j) {
    const std::uint64_t b = first_block + j;
    std::uint32_t c0 = static_cast<std::uint32_t>(b), c1 = static_cast<std::uint32_t>(b >> 32), c2 = s0, c3 = s1;
    std::uint32_t k0 = key0, k1 = key1;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{kM0} * c0;
      const std::uint64_t p1 = std::uint64_t{kM1} * c2;
      c0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1 ^ k0;
      c1 = static_cast<std::uint32_t>(p1);
      c2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3 ^ k1;
      c3 = static_cast<std::uint32_t>(p0);
      k0 += kW0;
      k1 += kW1;
    }
    const std::uint64_t hi = (std::uint64_t{c0} << 32) | c1;
    const std::uint64_t lo = (std::uint64_t{c2} << 32) | c3;
    out[2 * j] = (exact_double(hi >> 11) + 0.5) * 0x1.0p-53;
    out[2 * j + 1] = (exact_double(lo >> 11) + 0.5) * 0x1.0p-53;
  }
}

}  // namespace fraclab::kernels
