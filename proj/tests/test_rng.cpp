#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numeric>
#include <vector>

#include "rebal/rng.hpp"

using namespace rebal;

TEST_CASE("splitmix stream is deterministic") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("poisson rejects bad lambda") {
  Rng rng(1);
  CHECK_THROWS_AS(poisson_sample(-1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(poisson_sample(std::nan(""), rng), std::invalid_argument);
}

TEST_CASE("poisson lambda zero is always zero") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) CHECK(poisson_sample(0.0, rng) == 0);
}

TEST_CASE("poisson pmf chi-square at lambda 1") {
  // P(X=2 | lambda=1) = e^-1 / 2 ~= 0.18394
  const double p2 = std::exp(-1.0) / 2.0;
  CHECK(p2 == doctest::Approx(0.18394).epsilon(1e-4));

  Rng rng(123);
  constexpr int kDraws = 100000;
  constexpr int kBins = 8;  // 0..6 and 7+
  std::vector<long long> observed(kBins, 0);
  for (int i = 0; i < kDraws; ++i)
    ++observed[std::min<long long>(poisson_sample(1.0, rng), kBins - 1)];

  std::vector<double> expected(kBins, 0.0);
  double pk = std::exp(-1.0);
  double tail = 1.0;
  for (int k = 0; k < kBins - 1; ++k) {
    expected[k] = pk * kDraws;
    tail -= pk;
    pk /= (k + 1);
  }
  expected[kBins - 1] = tail * kDraws;

  double chi2 = 0.0;
  for (int k = 0; k < kBins; ++k)
    chi2 += (observed[k] - expected[k]) * (observed[k] - expected[k]) / expected[k];
  CHECK(chi2 < 24.32);  // chi-square 0.999 quantile at 7 dof; fixed seed, pre-verified
}

TEST_CASE("poisson moments at lambda 50") {
  Rng rng(2024);
  constexpr int kDraws = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = static_cast<double>(poisson_sample(50.0, rng));
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / kDraws;
  const double var = sumsq / kDraws - mean * mean;
  CHECK(std::abs(mean - 50.0) < 0.5);
  CHECK(std::abs(var - 50.0) < 2.0);
}

TEST_CASE("multinomial edge cases") {
  Rng rng(5);
  CHECK(multinomial_sample(0, {0.3, 0.7}, rng) == std::vector<long long>{0, 0});
  CHECK(multinomial_sample(7, {1.0, 0.0, 0.0}, rng) == std::vector<long long>{7, 0, 0});
  CHECK_THROWS_AS(multinomial_sample(3, {0.5, 0.6}, rng), std::invalid_argument);
  CHECK_THROWS_AS(multinomial_sample(3, {-0.1, 1.1}, rng), std::invalid_argument);
}

TEST_CASE("multinomial counts sum exactly to total") {
  Rng rng(9);
  const std::vector<double> probs{0.1, 0.25, 0.3, 0.05, 0.3};
  for (int trial = 0; trial < 200; ++trial) {
    const long long total = static_cast<long long>(rng.next_below(500));
    const auto counts = multinomial_sample(total, probs, rng);
    CHECK(std::accumulate(counts.begin(), counts.end(), 0LL) == total);
    for (long long c : counts) CHECK(c >= 0);
  }
}

TEST_CASE("multinomial fair split stays within 4 sigma") {
  Rng rng(31);
  const auto counts = multinomial_sample(100000, {0.5, 0.5}, rng);
  CHECK(std::abs(counts[0] - 50000) < 700);  // binomial sd ~158, ~4.4 sigma
  CHECK(counts[0] + counts[1] == 100000);
}

TEST_CASE("binomial marginal mean converges") {
  Rng rng(77);
  double sum = 0.0;
  constexpr int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) sum += static_cast<double>(binomial_sample(1000, 0.3, rng));
  CHECK(sum / kDraws == doctest::Approx(300.0).epsilon(0.01));
}
