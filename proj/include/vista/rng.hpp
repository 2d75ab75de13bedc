// Copyright 2026 The VISTA Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VISTA_RNG_HPP_
#define VISTA_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "vista/common.hpp"

namespace vista {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/**
 * Deterministic random stream. All distributions are implemented here (not
 * via std:: distribution objects) so that draws are reproducible across
 * standard libraries and platforms.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  int uniform_int(int n) {
    if (n <= 0) throw ValueError("Rng::uniform_int: n must be positive");
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
  }

  /// Standard normal via Box-Muller (one value per call).
  double normal() {
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  float normal_f() { return static_cast<float>(normal()); }

  /// Derives an independent child stream; advances this stream by one draw.
  Rng fork(std::uint64_t tag) { return Rng(splitmix64(next_u64() ^ splitmix64(tag))); }

  /// Unordered pair of distinct indices in [0, n), uniform over all pairs.
  std::pair<int, int> distinct_pair(int n) {
    if (n < 2) throw ValueError("Rng::distinct_pair: need n >= 2");
    int a = uniform_int(n);
    int b = uniform_int(n - 1);
    if (b >= a) ++b;
    if (a > b) std::swap(a, b);
    return {a, b};
  }

  std::string serialize() const {
    std::ostringstream os;
    os << gen_;
    return os.str();
  }

  static Rng deserialize(const std::string& s) {
    Rng r(0);
    std::istringstream is(s);
    is >> r.gen_;
    if (!is) throw FormatError("Rng::deserialize: bad state string");
    return r;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace vista

#endif  // VISTA_RNG_HPP_
