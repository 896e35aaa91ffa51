#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "pullfit/random.hpp"
#include "pullfit/stats.hpp"

using pullfit::Rng;

TEST_CASE("derive_seed separates streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t base : {0ULL, 1ULL, 42ULL}) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      seen.insert(pullfit::derive_seed(base, s));
    }
  }
  CHECK(seen.size() == 300);
  CHECK(pullfit::derive_seed(7, 3) == pullfit::derive_seed(7, 3));
}

TEST_CASE("same seed, same stream") {
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(a.normal() == b.normal());
    REQUIRE(a.index(7) == b.index(7));
  }
}

TEST_CASE("uniform stays in [0,1)") {
  Rng rng(1);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(lo < 1e-3);
  CHECK(hi > 1.0 - 1e-3);
}

TEST_CASE("index is uniform over small ranges") {
  Rng rng(5);
  std::vector<int> counts(3, 0);
  const int n = 90000;
  for (int i = 0; i < n; ++i) ++counts[rng.index(3)];
  for (int c : counts) {
    // 5 sigma of a binomial(90000, 1/3)
    CHECK(std::abs(c - n / 3) < 5 * std::sqrt(n * (1.0 / 3) * (2.0 / 3)));
  }
}

TEST_CASE("normal draws have unit moments") {
  Rng rng(17);
  std::vector<double> x(200000);
  for (double& v : x) v = rng.normal();
  CHECK(std::abs(pullfit::stats::mean(x)) < 0.012);
  CHECK(std::abs(pullfit::stats::sample_sd(x) - 1.0) < 0.01);
}
