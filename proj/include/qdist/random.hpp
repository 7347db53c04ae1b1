#ifndef QDIST_RANDOM_HPP
#define QDIST_RANDOM_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qdist/error.hpp"
#include "qdist/point_set.hpp"

namespace qdist {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the stream owned by worker/trial `index` under `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// mt19937_64 with a portable bounded draw (std::uniform_int_distribution is
/// implementation-defined, which would break cross-platform reproducibility).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InvalidParameter("Rng::below needs a positive bound");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Uniform `size`-subset of F_q^n, without replacement (partial Fisher-Yates over all indices).
inline PointSet random_subset(const FieldPtr& field, unsigned dim, std::uint64_t size, Rng& rng) {
  PointSet s(field, dim);
  const std::uint64_t n = s.ambient_size();
  if (size > n) throw InvalidParameter("requested " + std::to_string(size) + " points but F_q^n has only " + std::to_string(n));
  std::vector<std::uint64_t> pool(n);
  for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
  for (std::uint64_t i = 0; i < size; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  pool.resize(size);
  return PointSet::from_indices(field, dim, pool);
}

inline PointSet random_subset(const FieldPtr& field, unsigned dim, std::uint64_t size, std::uint64_t seed) {
  Rng rng(seed);
  return random_subset(field, dim, size, rng);
}

}  // namespace qdist

#endif  // QDIST_RANDOM_HPP
