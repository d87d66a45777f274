#ifndef LRMEM_RNG_HPP
#define LRMEM_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace lrmem {

/// SplitMix64 output finalizer (a bijective 64-bit mixer).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Order-sensitive hash of a sequence of words, used to derive stream keys
/// such as hash(master_seed, cell, replication).
constexpr std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x6A09E667F3BCC909ULL;
  for (std::uint64_t w : words) h = mix64(h ^ mix64(w + 0x9E3779B97F4A7C15ULL));
  return h;
}

/// Counter-based generator: the i-th draw of stream `key` is
/// mix64(key + (i+1) * golden_gamma). Any draw can be addressed directly, so
/// streams never depend on execution order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept : key_(key), counter_(counter) {}

  std::uint64_t at(std::uint64_t index) const noexcept { return mix64(key_ + (index + 1) * kGamma); }
  std::uint64_t next_u64() noexcept { return at(counter_++); }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double next_uniform() noexcept { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  /// Standard normal by inversion of the CDF (one uniform per draw).
  double next_gaussian() noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t key_;
  std::uint64_t counter_;
};

/// Inverse of the standard normal CDF (Wichura's AS 241, about 1e-16 relative).
double normal_quantile(double p) noexcept;

}  // namespace lrmem

#endif  // LRMEM_RNG_HPP
