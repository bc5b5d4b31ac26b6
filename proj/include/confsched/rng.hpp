#ifndef CONFSCHED_RNG_HPP
#define CONFSCHED_RNG_HPP

#include <cstdint>
#include <random>

namespace confsched {

/// Seedable generator with a platform-independent stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Standard distributions are implementation-defined, so bounded
/// draws use rejection sampling on the raw 64-bit output instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace confsched

#endif  // CONFSCHED_RNG_HPP
