#ifndef MC_RANDOM_HPP
#define MC_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace mc {

// Caller-owned random stream. Draws are fully determined by the seed and
// the call sequence; no hidden caching, so trial streams can be derived
// independently and consumed in parallel.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform on [0,1)
  double uniform() {
    return (next_u64() >> 11) * 0x1.0p-53;
  }

  // standard normal via Box-Muller, one value per call (no cached pair)
  double normal() {
    double u1 = 1.0 - uniform();  // (0,1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // splitmix64 chain over the given parts; used to derive per-trial seeds
  static std::uint64_t mix(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t p : parts) {
      h += p + 0x9e3779b97f4a7c15ULL;
      h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
      h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
      h ^= h >> 31;
    }
    return h;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace mc

#endif
