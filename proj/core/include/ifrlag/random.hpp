#ifndef IFRLAG_RANDOM_HPP
#define IFRLAG_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace ifrlag {

/// Portable pseudorandom source for simulation.
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard library distributions are implementation-defined,
/// so every derived draw below is computed from raw engine output with a
/// documented recipe. The same seed gives the same draws on every platform.
class Rng {
public:
  static constexpr std::string_view algorithm =
      "mt19937_64; uniform01 = (x >> 11) * 2^-53; uniform_int by modulo rejection";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform integer on [lo, hi]; requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform01() < p; }

private:
  std::mt19937_64 engine_;
};

}  // namespace ifrlag

#endif  // IFRLAG_RANDOM_HPP
