#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace frogwb {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Folds a list of 64-bit words into a stream key.
constexpr std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (auto p : parts) h = mix64(h ^ mix64(p + 0x9e3779b97f4a7c15ULL));
  return h;
}

/// Stream purposes, so draws for different roles never share a key.
enum class Purpose : std::uint64_t {
  Edge = 1,
  Lifetime = 2,
  Walk = 3,
  Occupation = 4,
  Stable = 5,
  Trial = 6,
};

/// Counter-based generator: output i of stream k is mix64(k + i * golden).
/// Any (key, counter) pair can be evaluated independently, so replicates
/// keyed by index give identical draws regardless of thread scheduling.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}
  CounterRng(std::uint64_t seed, std::initializer_list<std::uint64_t> parts)
      : key_(mix64(seed ^ stream_key(parts))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }

  result_type operator()() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  /// Returns u and writes 1 - u exactly into complement.
  double uniform_with_complement(double& complement) {
    const auto m = (*this)() >> 11;
    complement = (static_cast<double>((1ULL << 53) - m) - 0.5) * 0x1.0p-53;
    return (static_cast<double>(m) + 0.5) * 0x1.0p-53;
  }

  double exponential() { return -std::log(uniform()); }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace frogwb
