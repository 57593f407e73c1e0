#ifndef SHC_RNG_HPP
#define SHC_RNG_HPP

#include <cstdint>
#include <cmath>

namespace shc {

// Counter-based splittable generator built on the splitmix64 mixing
// function (Steele/Lea/Flood; finalizer by Vigna).  A stream is fully
// determined by (seed, experiment id, path index), so any path of any
// experiment can be regenerated in isolation and results do not depend
// on how paths are distributed over workers.
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  static constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  RngStream(uint64_t seed, uint64_t experiment_id, uint64_t path_index) {
    // Feistel-ish key derivation: each component is mixed in separately
    // so that adjacent (seed, id, path) triples give unrelated streams.
    uint64_t k = mix64(seed + kGamma);
    k = mix64(k ^ mix64(experiment_id + 0x8e2f0b5d3c97a16bULL));
    k = mix64(k ^ mix64(path_index + 0xd1b54a32d192ed03ULL));
    state_ = k;
  }

  uint64_t next_u64() {
    state_ += kGamma;
    return mix64(state_);
  }

  // Uniform on the open interval (0,1); never returns 0 or 1, so it is
  // safe inside log() and tan().
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform on (-1,1).
  double uniform_sym() { return 2.0 * uniform() - 1.0; }

  double exponential() { return -std::log(uniform()); }

  // Standard normal via the Marsaglia polar method; the spare value is
  // cached, which is fine because the cache lives in the stream itself.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform_sym();
      v = uniform_sym();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // Poisson count by the multiplication method; large means are split
  // in half recursively so the product never underflows.
  uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 50.0) return poisson(mean * 0.5) + poisson(mean * 0.5);
    const double limit = std::exp(-mean);
    uint64_t k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }

 private:
  uint64_t state_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace shc

#endif  // SHC_RNG_HPP
