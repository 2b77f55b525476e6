#pragma once

#include <cmath>
#include <cstdint>

namespace paretotopo {

/// Counter-based generator: the i-th draw of stream s under seed k is a pure
/// function of (k, s, i), so results do not depend on scheduling or platform.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed + 0x9E3779B97F4A7C15ull) ^ mix(stream * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull)) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() { return mix(key_ + (counter_++) * 0x9E3779B97F4A7C15ull); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    __extension__ using u128 = unsigned __int128;
    const u128 m = static_cast<u128>(next_u64()) * n;
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Standard exponential.
  double exponential() { return -std::log1p(-uniform()); }

  std::uint64_t counter() const noexcept { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

} // namespace paretotopo
