#ifndef TIELAB_RNG_HPP
#define TIELAB_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace tielab {

// SplitMix64 finalizer. Used both to expand seeds and as the keyed hash
// behind the common-random-number field.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

// xoshiro256++ seeded through SplitMix64. The engine is fully specified
// here (no std distributions), so identical seeds give identical streams
// on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9E3779B97F4A7C15ULL;
      word = mix64(x);
    }
  }

  // Independent stream derived from (master seed, stream id). Streams with
  // distinct ids are decorrelated regardless of scheduling order.
  static Rng stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    return Rng(derive(master_seed, stream_id));
  }

  static std::uint64_t derive(std::uint64_t master_seed, std::uint64_t stream_id) {
    return mix64(master_seed + 0x9E3779B97F4A7C15ULL * (stream_id + 1));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); rejection sampling, unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard normal via the Marsaglia polar method.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[next_below(i)]);
    }
  }

  // k distinct values from [0, n), in draw order.
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k);

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// One uniform draw per (key, from, to, step), addressable in any order.
// Simulations that share a key share every draw, which is what the
// coupling arguments over parameters and edge removals rely on.
inline double crn_uniform(std::uint64_t key, std::uint32_t from, std::uint32_t to,
                          std::uint32_t step) {
  std::uint64_t h = mix64(key ^ 0x6A09E667F3BCC909ULL);
  h = mix64(h + from);
  h = mix64(h + (static_cast<std::uint64_t>(to) << 32 | step));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace tielab

#endif  // TIELAB_RNG_HPP
