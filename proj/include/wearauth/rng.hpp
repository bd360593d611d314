#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace wearauth {

// Mixes a key into a seed so sub-streams (per subject, per tree, per fold)
// are independent of each other and of iteration order.
inline uint64_t mix_seed(uint64_t seed, uint64_t key) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (key + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic RNG: mt19937_64 core with explicit float/normal conversion,
// so identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; one variate per call keeps the stream position predictable.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Uniform integer in [0, n).
  int below(int n) { return static_cast<int>(gen_() % static_cast<uint64_t>(n)); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[i], v[static_cast<size_t>(below(i + 1))]);
    }
  }

  // k distinct indices from [0, n), in draw order.
  std::vector<int> sample_without_replacement(int n, int k) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> out;
    out.reserve(static_cast<size_t>(k));
    for (int i = 0; i < k && i < n; ++i) {
      int j = i + below(n - i);
      std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
      out.push_back(pool[static_cast<size_t>(i)]);
    }
    return out;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace wearauth
