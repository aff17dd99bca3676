#pragma once

#include <cstdint>
#include <random>

#include "skew/quat.hpp"

namespace skew {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for trial `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(splitmix64(seed)) {}

  long long integer(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(g_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(g_); }
  Rational rational(int num, int den) { return make_rational(integer(-num, num), integer(1, den)); }

  template <class S>
  S scalar(int num = 9, int den = 4) {
    if constexpr (is_exact_v<S>)
      return rational(num, den);
    else
      return real(-1.0, 1.0) * num / den;
  }
  template <class S>
  Quat<S> quat(int num = 9, int den = 4) {
    return Quat<S>(scalar<S>(num, den), scalar<S>(num, den), scalar<S>(num, den), scalar<S>(num, den));
  }
  // Quaternion with small integer coordinates, |entry| <= bound.
  template <class S>
  Quat<S> small_int_quat(int bound) {
    return Quat<S>(S(integer(-bound, bound)), S(integer(-bound, bound)), S(integer(-bound, bound)),
                   S(integer(-bound, bound)));
  }
  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

}  // namespace skew
