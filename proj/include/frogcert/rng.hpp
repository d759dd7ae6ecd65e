#pragma once

#include <cstdint>
#include <limits>

namespace frogcert {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Folds a list of identifiers into one stream key.
template <typename... Ids>
constexpr std::uint64_t stream_key(std::uint64_t seed, Ids... ids) noexcept {
  std::uint64_t k = mix64(seed);
  ((k = mix64(k ^ mix64(static_cast<std::uint64_t>(ids) + 0x632be59bd9b4e019ULL))), ...);
  return k;
}

/// Counter-based generator: draw t of a stream is a pure function of (key, t),
/// so a stream can be reconstructed anywhere from its key alone.
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
public:
  using result_type = std::uint64_t;

  constexpr explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept
      : key_(key), counter_(counter) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    return mix64(key_ + 0xd1b54a32d192ed03ULL * ++counter_);
  }

  /// Uniform integer in [0, n), n > 0 (Lemire's nearly-divisionless method).
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

/// Stream purposes. Keeping them distinct guarantees that, e.g., the site-count
/// draw at a vertex never shares a stream with a walker launched from it.
enum class StreamTag : std::uint64_t {
  site_count = 1,
  walker = 2,
  brw = 3,
  misc = 4,
};

}  // namespace frogcert
