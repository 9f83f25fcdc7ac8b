#ifndef QDICH_RNG_HPP
#define QDICH_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string_view>

namespace qdich {

// Self-contained splitmix64 stream. Seeded instance generation must be
// bit-identical across runs and platforms, so we do not rely on
// std::normal_distribution (implementation-defined sequences).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in (0,1)
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  // standard normal via Box-Muller; one value per call, cache the pair
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = next_uniform();
    double v = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(6.283185307179586476925286766559 * v);
    has_spare_ = true;
    return r * std::cos(6.283185307179586476925286766559 * v);
  }

  // integer in [lo, hi] inclusive
  std::uint64_t next_range(std::uint64_t lo, std::uint64_t hi) {
    return lo + next_u64() % (hi - lo + 1);
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// independent stream for a named check under a master seed
inline Rng derived_rng(std::uint64_t seed, std::string_view name) {
  return Rng(seed ^ fnv1a(name));
}

}  // namespace qdich

#endif
