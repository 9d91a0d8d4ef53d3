#pragma once

#include <cstdint>
#include <vector>

namespace rebal {

/// SplitMix64. Chosen over std::mt19937_64 so that integer streams are
/// identical on every platform regardless of standard-library vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) without modulo bias.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Draw from Poisson(lambda). Knuth's product-of-uniforms for lambda < 30,
/// log-space inversion walked outward from the mode above that.
long long poisson_sample(double lambda, Rng& rng);

/// Draw counts summing exactly to total, cell i with probability probs[i].
/// probs must be non-negative and sum to 1 within 1e-9.
std::vector<long long> multinomial_sample(long long total, const std::vector<double>& probs,
                                          Rng& rng);

/// Draw from Binomial(n, p).
long long binomial_sample(long long n, double p, Rng& rng);

}  // namespace rebal
