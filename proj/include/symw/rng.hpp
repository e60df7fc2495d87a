#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

#include "symw/tensor.hpp"

namespace symw {

/// Seeded random source. All randomness in the library flows through one of
/// these so a fixed seed reproduces every run bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(eng_);
  }

  double normal(double mean, double stddev) {
    std::normal_distribution<double> d(mean, stddev);
    return d(eng_);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    std::uniform_int_distribution<int> d(lo, hi);
    return d(eng_);
  }

  std::uint64_t next_u64() { return eng_(); }

  template <class It>
  void shuffle(It first, It last) {
    std::shuffle(first, last, eng_);
  }

  /// Derived stream: decoupled from the parent's sequence.
  Rng fork(std::uint64_t salt) {
    return Rng(eng_() ^ (salt * 0x9e3779b97f4a7c15ULL));
  }

 private:
  std::mt19937_64 eng_;
};

inline void fill_normal(Tensor& t, double mean, double stddev, Rng& rng) {
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.normal(mean, stddev);
}

inline void fill_uniform(Tensor& t, double lo, double hi, Rng& rng) {
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(lo, hi);
}

}  // namespace symw
