#pragma once

#include <array>
#include <cstdint>

namespace tsteg {

// Philox 4x32-10 counter-based generator.
//
// A (seed, stream) pair selects an independent sequence: the 64-bit seed is
// the cipher key and the stream id occupies the upper half of the counter
// block, so distinct streams can never collide regardless of how many values
// are drawn. Each block yields four 32-bit words, served as two 64-bit
// results. Known-answer vectors are pinned in the test suite.
class Philox4x32 {
 public:
  using result_type = std::uint64_t;
  using block_type = std::array<std::uint32_t, 4>;
  using key_type = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, 0, static_cast<std::uint32_t>(stream),
             static_cast<std::uint32_t>(stream >> 32)} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    if (lane_ == 0) {
      block_ = round10(ctr_, key_);
      // 64-bit block counter in ctr_[0..1]; ctr_[2..3] hold the stream id.
      if (++ctr_[0] == 0) ++ctr_[1];
    }
    const int i = 2 * lane_;
    lane_ ^= 1;
    return (static_cast<result_type>(block_[i + 1]) << 32) | block_[i];
  }

  // One full 10-round keyed bijection of a counter block.
  static block_type round10(block_type ctr, key_type key) noexcept {
    for (int r = 0; r < 10; ++r) {
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

 private:
  key_type key_;
  block_type ctr_;
  block_type block_{};
  int lane_ = 0;
};

// Uniform double in [0, 1), 53 random bits.
inline double uniform_unit(Philox4x32& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace tsteg
