#include "meso/random.hpp"

#include <limits>

namespace meso {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngSeed derive_seed(RngSeed master, std::uint64_t index) {
  return {splitmix64(master.value ^ splitmix64(index + 0x632be59bd9b4e019ULL))};
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the top partial copy of [0, bound) in the 64-bit range.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

}  // namespace meso
