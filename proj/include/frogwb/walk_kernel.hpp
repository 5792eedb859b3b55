#pragma once

#include <array>
#include <cstdint>

#include "frogwb/rng.hpp"

namespace frogwb::detail {

/// Eight steps of a +-1 walk packed in one byte (bit set = up step).
struct ByteSteps {
  std::int8_t total;
  std::int8_t max_prefix;  // max over the 8 partial sums s_1..s_8
  std::int8_t min_prefix;
};

inline constexpr std::array<ByteSteps, 256> make_byte_table() {
  std::array<ByteSteps, 256> t{};
  for (int b = 0; b < 256; ++b) {
    int s = 0, hi = -9, lo = 9;
    for (int j = 0; j < 8; ++j) {
      s += ((b >> j) & 1) ? 1 : -1;
      if (s > hi) hi = s;
      if (s < lo) lo = s;
    }
    t[b] = {static_cast<std::int8_t>(s), static_cast<std::int8_t>(hi), static_cast<std::int8_t>(lo)};
  }
  return t;
}

inline constexpr std::array<ByteSteps, 256> kByteSteps = make_byte_table();

/// Sequential step source over a counter-based stream; step i of the
/// stream is always the same bit regardless of how it is consumed.
class StepSource {
 public:
  explicit StepSource(std::uint64_t key) : rng_(key) {}

  /// Next 8 steps as a byte, lowest bit first.
  std::uint8_t next_byte() {
    if (bits_left_ >= 8) {
      const auto b = static_cast<std::uint8_t>(word_ & 0xff);
      word_ >>= 8;
      bits_left_ -= 8;
      return b;
    }
    const int have = bits_left_;
    const std::uint64_t low = word_;
    refill();
    const int need = 8 - have;
    const std::uint64_t high = word_ & ((1ULL << need) - 1);
    word_ >>= need;
    bits_left_ -= need;
    return static_cast<std::uint8_t>((high << have) | low);
  }

  int next_step() {
    if (bits_left_ == 0) refill();
    const int s = (word_ & 1) ? 1 : -1;
    word_ >>= 1;
    --bits_left_;
    return s;
  }

 private:
  void refill() {
    word_ = rng_();
    bits_left_ = 64;
  }

  CounterRng rng_;
  std::uint64_t word_ = 0;
  int bits_left_ = 0;
};

}  // namespace frogwb::detail
