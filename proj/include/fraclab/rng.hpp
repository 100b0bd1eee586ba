#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace fraclab {

namespace kernels {
// Uniforms of n_blocks consecutive Philox blocks starting at first_block,
// two per block, in next_uniform order.
void philox_uniforms(std::uint32_t key0, std::uint32_t key1, std::uint64_t stream, std::uint64_t first_block,
                     std::size_t n_blocks, double* out);
}  // namespace kernels

/// Philox4x32-10 (Salmon et al., SC'11). Pure function of (counter, key).
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

/// Independent stream per (seed, stream id): the seed is the key, the stream id
/// the high counter words, and the draw index the low ones. Draw i of a
/// stream never depends on how other streams were scheduled.
class PhiloxStream {
public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  /// Next 64 random bits.
  std::uint64_t next_u64() {
    if (have_ == 0) refill();
    --have_;
    return buf_[have_];
  }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double next_uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  /// Same values as n successive next_uniform() calls.
  void fill_uniform(double* out, std::size_t n) {
    while (n > 0 && have_ > 0) {
      *out++ = next_uniform();
      --n;
    }
    const std::size_t blocks = n / 2;
    kernels::philox_uniforms(key_[0], key_[1], stream_, block_, blocks, out);
    block_ += blocks;
    if (n % 2) out[n - 1] = next_uniform();
  }

  std::uint64_t blocks_used() const { return block_; }

private:
  void refill() {
    const auto r = philox4x32({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                               static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                              key_);
    ++block_;
    buf_[1] = (std::uint64_t{r[0]} << 32) | r[1];
    buf_[0] = (std::uint64_t{r[2]} << 32) | r[3];
    have_ = 2;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int have_ = 0;
};

}  // namespace fraclab
