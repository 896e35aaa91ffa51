#include <doctest.h>

#include <cmath>
#include <vector>

#include "pullfit/error.hpp"
#include "pullfit/stats.hpp"
#include "pullfit/stimulus.hpp"
#include "test_support.hpp"

using namespace pullfit;

using pullfit::testing::code_of;

TEST_CASE("default design honours the measured separations") {
  const DesignMeans d = default_design();
  CHECK(d.line_top()[1] - d.line_top()[0] == 12.0);
  CHECK(d.line_top()[2] - d.line_top()[1] == 12.0);
  CHECK(d.line_bottom()[1] - d.line_bottom()[0] == 12.0);
  CHECK(d.bar_bottom()[2] - d.bar_bottom()[1] == 5.0);
  CHECK(d.bar_top()[1] - d.bar_top()[0] == 5.0);
  CHECK(d.line_top() == MeanTriple{93, 105, 117});
  CHECK(d.line_bottom() == MeanTriple{23, 35, 47});
  CHECK(d.bar_top() == MeanTriple{100, 105, 110});
  CHECK(d.bar_bottom() == MeanTriple{30, 35, 40});
  for (auto kind : {SeriesKind::Line, SeriesKind::Bar}) {
    for (auto half : {Half::Top, Half::Bottom}) {
      for (double m : d.means(kind, half)) {
        CHECK(m >= 0.0);
        CHECK(m <= 140.0);
      }
    }
  }
}

TEST_CASE("design construction rejects broken invariants") {
  const MeanTriple lt{93, 105, 117};
  const MeanTriple lb{23, 35, 47};
  const MeanTriple bt{100, 105, 110};
  const MeanTriple bb{30, 35, 40};
  CHECK_NOTHROW(DesignMeans(lt, lb, bt, bb));
  CHECK(code_of([&] { DesignMeans({90, 105, 117}, lb, bt, bb); }) == ErrorCode::ValidationError);
  CHECK(code_of([&] { DesignMeans(lt, lb, {100, 106, 110}, bb); }) == ErrorCode::ValidationError);
  CHECK(code_of([&] { DesignMeans(lt, lb, bt, {40, 35, 30}); }) == ErrorCode::ValidationError);
  // bottom-half means above the midline
  CHECK(code_of([&] { DesignMeans(lt, {63, 75, 87}, bt, bb); }) == ErrorCode::ValidationError);
  // outside the frame
  CHECK(code_of([&] { DesignMeans({120, 132, 144}, lb, bt, bb); }) == ErrorCode::ValidationError);
}

TEST_CASE("generate_series") {
  Rng rng(1);
  SUBCASE("uniform profile repeats the mean") {
    SeriesSpec spec{SeriesKind::Line, Half::Top, Profile::Uniform, 105.0, 4.0, 48};
    const auto pts = generate_series(spec, rng);
    CHECK(pts == std::vector<double>(48, 105.0));
  }
  SUBCASE("zero noise is exact") {
    SeriesSpec spec{SeriesKind::Bar, Half::Bottom, Profile::Noisy, 35.0, 0.0, 10};
    CHECK(generate_series(spec, rng) == std::vector<double>(10, 35.0));
  }
  SUBCASE("noisy mean within the CLT bound") {
    Rng seeded(7);
    SeriesSpec spec{SeriesKind::Line, Half::Top, Profile::Noisy, 105.0, 4.0, 10000};
    const auto pts = generate_series(spec, seeded);
    REQUIRE(pts.size() == 10000);
    CHECK(std::abs(stats::mean(pts) - 105.0) < 0.15);
  }
  SUBCASE("invalid specs") {
    SeriesSpec empty{SeriesKind::Line, Half::Top, Profile::Noisy, 105.0, 4.0, 0};
    CHECK(code_of([&] { generate_series(empty, rng); }) == ErrorCode::InvalidSpec);
    SeriesSpec negative{SeriesKind::Line, Half::Top, Profile::Noisy, 105.0, -1.0, 5};
    CHECK(code_of([&] { generate_series(negative, rng); }) == ErrorCode::InvalidSpec);
  }
}

TEST_CASE("uniform profile does not depend on the stream") {
  SeriesSpec spec{SeriesKind::Bar, Half::Top, Profile::Uniform, 110.0, 7.0, 20};
  Rng a(1);
  Rng b(2);
  CHECK(generate_series(spec, a) == generate_series(spec, b));
}

TEST_CASE("noisy points are clamped to the frame") {
  Rng rng(3);
  SeriesSpec spec{SeriesKind::Line, Half::Top, Profile::Noisy, 138.0, 30.0, 5000};
  for (double p : generate_series(spec, rng)) {
    REQUIRE(p >= 0.0);
    REQUIRE(p <= 140.0);
  }
}

TEST_CASE("sample_true_pair") {
  Rng rng(1);
  SUBCASE("singleton") {
    const std::vector<TruePair> one{{SeriesKind::Line, 105, 35, SeriesKind::Bar}};
    for (int i = 0; i < 10; ++i) CHECK(sample_true_pair(one, rng) == one[0]);
  }
  SUBCASE("nine pairs are hit uniformly") {
    const auto pairs = design_pairs(default_design(), SeriesKind::Line, Half::Top, SeriesKind::Bar);
    REQUIRE(pairs.size() == 9);
    std::vector<int> hits(9, 0);
    const int n = 90000;
    for (int i = 0; i < n; ++i) {
      const TruePair& p = sample_true_pair(pairs, rng);
      ++hits[static_cast<std::size_t>(&p - pairs.data())];
    }
    for (int h : hits) CHECK(std::abs(h / double(n) - 1.0 / 9.0) < 0.01);
  }
  SUBCASE("empty design") {
    CHECK(code_of([&] { sample_true_pair({}, rng); }) == ErrorCode::EmptyDesign);
  }
}

TEST_CASE("design pairs put the non-target in the opposite half") {
  const auto pairs = design_pairs(default_design(), SeriesKind::Bar, Half::Bottom, SeriesKind::Line);
  for (const auto& p : pairs) {
    CHECK(p.target_true <= 70.0);
    CHECK(p.nontarget_true >= 70.0);
    CHECK(p.nontarget_kind == SeriesKind::Line);
  }
}
