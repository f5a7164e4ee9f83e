#pragma once
// Deterministic pseudo-random numbers: splitmix64 with an explicit Box-Muller
// transform.  Standard-library distributions are implementation-defined, so a
// fixed algorithm is used to keep runs byte-for-byte reproducible; streams are
// forked from a master seed so parallel workers stay independent and ordered.

#include <cmath>
#include <complex>
#include <cstdint>

namespace octocut {

inline uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {
    // scramble once so nearby seeds decorrelate
    splitmix64_next(state_);
  }

  // independent deterministic substream (e.g. one per multi-start index)
  Rng fork(uint64_t stream) const {
    uint64_t s = state_;
    uint64_t h = splitmix64_next(s) ^ (0x9E3779B97F4A7C15ull * (stream + 1));
    return Rng(h);
  }

  uint64_t next_u64() { return splitmix64_next(state_); }

  // uniform in [0, 1)
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller, pairs cached
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    // u1 in (0,1] so the log is finite
    double u1 = double((next_u64() >> 11) + 1) * 0x1.0p-53;
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(th);
    have_cached_ = true;
    return r * std::cos(th);
  }

  std::complex<double> cnormal() {
    double re = normal();
    double im = normal();
    return {re, im};
  }

 private:
  uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace octocut
