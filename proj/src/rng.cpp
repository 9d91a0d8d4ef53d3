#include "rebal/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rebal {
namespace {

// Inverse-CDF draw over an integer support, summing probability mass in the
// order mode, mode+1, mode-1, mode+2, ... The reordering leaves the
// distribution unchanged and keeps the expected walk length O(sigma).
template <typename LogPmf>
long long mode_walk_sample(LogPmf log_pmf, long long mode, long long lo, long long hi, Rng& rng) {
  const double u = rng.next_double();
  double cum = 0.0;
  long long up = mode;
  long long down = mode - 1;
  long long last = mode;
  while (up <= hi || down >= lo) {
    if (up <= hi) {
      cum += std::exp(log_pmf(up));
      last = up;
      if (cum >= u) return up;
      ++up;
    }
    if (down >= lo) {
      cum += std::exp(log_pmf(down));
      last = down;
      if (cum >= u) return down;
      --down;
    }
  }
  return last;  // u landed in floating-point residue; farthest tail point
}

}  // namespace

std::uint64_t Rng::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v > limit);
  return v % bound;
}

long long poisson_sample(double lambda, Rng& rng) {
  if (!std::isfinite(lambda) || lambda < 0.0)
    throw std::invalid_argument("poisson_sample: lambda must be finite and >= 0");
  if (lambda == 0.0) return 0;
  if (lambda < 30.0) {
    const double limit = std::exp(-lambda);
    long long k = 0;
    double prod = rng.next_double();
    while (prod > limit) {
      prod *= rng.next_double();
      ++k;
    }
    return k;
  }
  const double log_lambda = std::log(lambda);
  auto log_pmf = [&](long long k) {
    return static_cast<double>(k) * log_lambda - lambda - std::lgamma(static_cast<double>(k) + 1.0);
  };
  const long long mode = static_cast<long long>(lambda);
  const long long hi = mode + static_cast<long long>(40.0 * std::sqrt(lambda)) + 40;
  return mode_walk_sample(log_pmf, mode, 0, hi, rng);
}

long long binomial_sample(long long n, double p, Rng& rng) {
  if (n < 0) throw std::invalid_argument("binomial_sample: n must be >= 0");
  if (!std::isfinite(p) || p < -1e-12 || p > 1.0 + 1e-12)
    throw std::invalid_argument("binomial_sample: p must be in [0, 1]");
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  if (n <= 64) {
    long long k = 0;
    for (long long i = 0; i < n; ++i)
      if (rng.next_double() < p) ++k;
    return k;
  }
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  auto log_pmf = [&](long long k) {
    const double kd = static_cast<double>(k);
    return log_n_fact - std::lgamma(kd + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0) +
           kd * log_p + static_cast<double>(n - k) * log_q;
  };
  const long long mode = static_cast<long long>((static_cast<double>(n) + 1.0) * p);
  return mode_walk_sample(log_pmf, std::min(mode, n), 0, n, rng);
}

std::vector<long long> multinomial_sample(long long total, const std::vector<double>& probs,
                                          Rng& rng) {
  if (total < 0) throw std::invalid_argument("multinomial_sample: total must be >= 0");
  if (probs.empty()) throw std::invalid_argument("multinomial_sample: empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0)
      throw std::invalid_argument("multinomial_sample: probabilities must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("multinomial_sample: probabilities must sum to 1");

  std::vector<long long> counts(probs.size(), 0);
  long long remaining = total;
  double mass_left = 1.0;
  for (std::size_t i = 0; i + 1 < probs.size() && remaining > 0; ++i) {
    const double p = mass_left > 0.0 ? std::min(1.0, probs[i] / mass_left) : 1.0;
    counts[i] = binomial_sample(remaining, p, rng);
    remaining -= counts[i];
    mass_left -= probs[i];
  }
  counts.back() += remaining;
  return counts;
}

}  // namespace rebal
