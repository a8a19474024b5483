#ifndef GRADECAST_RNG_HPP
#define GRADECAST_RNG_HPP

#include <cstdint>
#include <vector>

namespace gradecast {

/// Deterministic random stream, algorithm "splitmix64/v1".
///
/// The generator is the splitmix64 counter sequence: state advances by the
/// 64-bit golden-gamma constant and each output is the splitmix64 finalizer
/// of the new state. The same seed yields the same byte sequence on every
/// platform. All randomness in this library flows through RngStream; nothing
/// reads ambient entropy.
///
/// A stream is single-owner. Independent substreams for concurrent or
/// order-independent work are derived with split(), which keys off the
/// stream's original seed, not its current position.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_double();

  /// Unbiased uniform integer in [0, bound) via bitmask rejection; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);

  std::vector<double> uniform(std::size_t n);

  /// Standard normal draws via the Box-Muller transform. Draws are produced
  /// in pairs of two uniforms each; for odd n the second half of the last
  /// pair is discarded, so normal(n) always consumes ceil(n/2)*2 uniforms.
  std::vector<double> normal(std::size_t n);
  double next_normal();

  /// Fisher-Yates shuffle driven by next_below.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  /// Derive an independent substream from this stream's seed and a key.
  /// Deterministic and insensitive to how much of this stream was consumed.
  RngStream split(std::uint64_t key) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace gradecast

#endif
