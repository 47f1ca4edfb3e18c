#pragma once

#include <cstdint>
#include <random>

namespace meso {

// 64-bit seed. Identical seeds give identical streams on every platform.
struct RngSeed {
  std::uint64_t value = 0;
};

// SplitMix64 finaliser; used to derive independent child seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for sample `index` of a run started from `master`.
RngSeed derive_seed(RngSeed master, std::uint64_t index);

// MT19937-64 with platform-independent draws. The std:: distributions are
// implementation-defined, so uniform variates are built from raw 64-bit words.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer on [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

// Fisher-Yates with Rng::below.
template <typename It>
void shuffle(It first, It last, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = rng.below(i);
    std::swap(first[i - 1], first[j]);
  }
}

}  // namespace meso
