#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace wcg {

// splitmix64: tiny, well-mixed, and identical on every platform. The
// standard <random> distributions are not bit-reproducible across
// library implementations, and every randomized result here must be
// reproducible from (seed, input) alone.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) without modulo bias.
  uint64_t next_below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng: zero bound");
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // k distinct indices from [0, n), in draw order.
  std::vector<size_t> sample_without_replacement(size_t n, size_t k) {
    if (k > n) throw std::invalid_argument("Rng: sample larger than pool");
    std::vector<size_t> pool(n);
    for (size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<size_t> out;
    out.reserve(k);
    for (size_t i = 0; i < k; ++i) {
      const size_t j = i + static_cast<size_t>(next_below(n - i));
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

 private:
  uint64_t state_;
};

// Deterministic sub-seed for a (master seed, stream index) pair. Serial
// and parallel trial schedules derive identical streams from this.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
  Rng r(master ^ (0xD1B54A32D192ED03ull * (stream + 1)));
  return r.next_u64();
}

}  // namespace wcg
