#ifndef ESER_RANDOM_HPP
#define ESER_RANDOM_HPP

#include <cstdint>
#include <random>

namespace eser {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used to derive
/// independent stream seeds from one user seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic generator: std::mt19937_64 seeded through SplitMix64, with
/// bounded draws done by rejection so results do not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : engine_(splitmix64(seed ^ splitmix64(stream))) {}

  /// Independent generator for sub-stream `stream`.
  Rng split(std::uint64_t stream) { return Rng(engine_(), stream); }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do r = engine_();
    while (r >= limit);
    return r % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace eser

#endif  // ESER_RANDOM_HPP
