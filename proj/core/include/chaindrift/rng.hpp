#pragma once

// Counter-based pseudo-random generator with splittable streams.
//
// Every draw is a pure function of (key, counter): the counter is advanced,
// never the key, so a stream can be replayed from any point and sibling
// streams derived from the same seed never overlap in practice. The mixer is
// the splitmix64 finalizer; the algorithm is fixed here so that traces are
// reproducible from (seed, stream index) alone.

#include <cmath>
#include <cstdint>

namespace chaindrift {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  // Independent stream for (seed, stream index); used for per-chain streams.
  static CounterRng for_stream(std::uint64_t seed, std::uint64_t stream) {
    return CounterRng(mix64(mix64(seed) ^ mix64(stream + 0x632BE59BD9B4E019ull)));
  }

  std::uint64_t next_u64() {
    std::uint64_t z = key_ + counter_ * 0x9E3779B97F4A7C15ull;
    ++counter_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 significant bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_coin(double p) { return next_unit() < p; }

  // Standard normal via Box-Muller; always consumes exactly two uniforms.
  double next_normal() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Uniform integer in [0, n); n must be positive.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace chaindrift
