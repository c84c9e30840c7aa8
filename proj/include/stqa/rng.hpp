#ifndef STQA_RNG_HPP_
#define STQA_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace stqa {

/// Seeded generator whose output is identical on every platform.
///
/// std::mt19937_64's raw sequence is fixed by the standard, but the standard
/// distributions are not, so the uniform and bounded draws are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace detail {
inline std::uint64_t mix_part(std::uint64_t h, std::string_view s) {
  std::uint64_t f = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    f ^= c;
    f *= 0x100000001b3ULL;
  }
  return splitmix64(h ^ f);
}
inline std::uint64_t mix_part(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ splitmix64(v)); }
}  // namespace detail

/// Derives a child seed from a root seed and a key path, so each generated
/// item draws from its own stream regardless of processing order.
template <typename... Parts>
std::uint64_t derive_seed(std::uint64_t root, const Parts&... parts) {
  std::uint64_t h = splitmix64(root);
  ((h = detail::mix_part(h, parts)), ...);
  return h;
}

}  // namespace stqa

#endif  // STQA_RNG_HPP_
