#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "pullfit/random.hpp"
#include "pullfit/stats.hpp"

using namespace pullfit;

TEST_CASE("type-7 quantiles match R's default") {
  const std::vector<double> x{1, 2, 3, 4};
  // quantile(1:4, c(.25, .5, .75)) in R
  CHECK(stats::quantile_type7(x, 0.25) == doctest::Approx(1.75));
  CHECK(stats::quantile_type7(x, 0.5) == doctest::Approx(2.5));
  CHECK(stats::quantile_type7(x, 0.75) == doctest::Approx(3.25));
  CHECK(stats::quantile_type7(x, 0.0) == 1.0);
  CHECK(stats::quantile_type7(x, 1.0) == 4.0);
  const std::vector<double> unsorted{10, 0, 5};
  CHECK(stats::quantile_type7(unsorted, 0.25) == doctest::Approx(2.5));
}

TEST_CASE("sample sd uses n-1") {
  const std::vector<double> x{-5, -4};
  CHECK(stats::mean(x) == -4.5);
  CHECK(stats::sample_sd(x) == doctest::Approx(std::sqrt(0.5)));
  CHECK(stats::sample_sd(std::vector<double>{3.0}) == 0.0);
}

namespace {

// Brute force: evaluate both ECDFs at every pooled point.
double ks_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  for (double x : pooled) {
    const double fa = static_cast<double>(std::count_if(a.begin(), a.end(), [&](double v) { return v <= x; })) / a.size();
    const double fb = static_cast<double>(std::count_if(b.begin(), b.end(), [&](double v) { return v <= x; })) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

} // namespace

TEST_CASE("KS statistic matches brute-force ECDF comparison") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(1 + rng.index(40));
    std::vector<double> b(1 + rng.index(40));
    // rounded values force ties across and within samples
    for (double& v : a) v = std::round(rng.normal() * 3.0);
    for (double& v : b) v = std::round(rng.normal() * 3.0 + 0.5);
    REQUIRE(stats::ks_statistic(a, b) == doctest::Approx(ks_oracle(a, b)).epsilon(1e-12));
  }
  const std::vector<double> same{1, 2, 3};
  CHECK(stats::ks_statistic(same, same) == 0.0);
  const std::vector<double> left{0, 1};
  const std::vector<double> right{5, 6};
  CHECK(stats::ks_statistic(left, right) == 1.0);
}

TEST_CASE("spearman on monotone and tied data") {
  const std::vector<double> x{0.8, 0.85, 0.9, 0.95, 1.0};
  const std::vector<double> up{0.79, 0.86, 0.91, 0.949, 0.998};
  const std::vector<double> down{5, 4, 3, 2, 1};
  CHECK(stats::spearman(x, up) == doctest::Approx(1.0));
  CHECK(stats::spearman(x, down) == doctest::Approx(-1.0));

  const auto ranks = stats::average_ranks(std::vector<double>{10, 20, 20, 30});
  CHECK(ranks == std::vector<double>{1.0, 2.5, 2.5, 4.0});
  // one swap among five: 1 - 6 * 2 / (5 * 24)
  const std::vector<double> swapped{1, 2, 4, 3, 5};
  CHECK(stats::spearman(std::vector<double>{1, 2, 3, 4, 5}, swapped) == doctest::Approx(0.9));
}
