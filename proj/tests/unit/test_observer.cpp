#include <doctest.h>

#include <cmath>
#include <vector>

#include "pullfit/observer.hpp"
#include "pullfit/stats.hpp"
#include "test_support.hpp"

using namespace pullfit;
using pullfit::testing::code_of;

namespace {

std::vector<double> errors_of(const std::vector<TrialRecord>& trials, Condition c,
                              SeriesKind kind) {
  std::vector<double> out;
  for (const auto& t : trials) {
    if (t.condition == c && t.target_kind == kind) out.push_back(t.error());
  }
  return out;
}

} // namespace

TEST_CASE("single percepts add the kind's bias") {
  Rng rng(1);
  ObserverParams p;
  p.sigma_line = 0.0;
  p.sigma_bar = 0.0;
  CHECK(sample_single_percept(SeriesKind::Line, 105.0, p, rng) == 100.51);
  CHECK(sample_single_percept(SeriesKind::Bar, 35.0, p, rng) == 39.19);
}

TEST_CASE("single percept mean within the CLT bound") {
  Rng rng(3);
  ObserverParams p;
  std::vector<double> x(100000);
  for (double& v : x) v = sample_single_percept(SeriesKind::Line, 105.0, p, rng);
  CHECK(std::abs(stats::mean(x) - 100.51) < 0.07);
}

TEST_CASE("simulate_dataset layout") {
  const SimulationCounts counts{10, 12, 773, 779};
  const auto trials = simulate_dataset(default_design(), ObserverParams{}, counts,
                                       CompoundConfig::LineBar, 5);
  REQUIRE(trials.size() == 10 + 12 + 773 + 779);
  std::size_t compound = 0;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto& t = trials[i];
    CHECK(t.trial_id == static_cast<std::int64_t>(i));
    if (t.condition == Condition::Compound) {
      ++compound;
      REQUIRE(t.nontarget_kind.has_value());
      REQUIRE(t.true_nontarget.has_value());
      CHECK(*t.nontarget_kind != t.target_kind);
      // line-bar: lines on top, bars at the bottom
      CHECK(t.target_half == (t.target_kind == SeriesKind::Line ? Half::Top : Half::Bottom));
    } else {
      CHECK_FALSE(t.nontarget_kind.has_value());
      CHECK_FALSE(t.true_nontarget.has_value());
    }
  }
  CHECK(compound == 1552);
}

TEST_CASE("zero-noise simulator is the deterministic mixture") {
  ObserverParams p;
  p.sigma_line = 0.0;
  p.sigma_bar = 0.0;
  const SimulationCounts counts{0, 0, 300, 300};

  SUBCASE("w = 1 ignores the non-target") {
    p.w_line_target = 1.0;
    const auto trials = simulate_dataset(default_design(), p, counts, CompoundConfig::LineBar, 9);
    for (const auto& t : trials) {
      if (t.target_kind == SeriesKind::Line) {
        CHECK(t.estimate == t.true_target + (-4.49));
      }
    }
  }
  SUBCASE("weighted combination of true positions") {
    p.bias_line = 0.0;
    p.bias_bar = 0.0;
    bool saw_reference_pair = false;
    const auto trials = simulate_dataset(default_design(), p, counts, CompoundConfig::LineBar, 9);
    for (const auto& t : trials) {
      if (t.target_kind != SeriesKind::Line) continue;
      CHECK(t.estimate == doctest::Approx(0.945 * t.true_target + 0.055 * *t.true_nontarget));
      if (t.true_target == 105.0 && *t.true_nontarget == 35.0) {
        saw_reference_pair = true;
        CHECK(t.estimate == doctest::Approx(101.15).epsilon(1e-12));
      }
    }
    CHECK(saw_reference_pair);
  }
  SUBCASE("different seeds only change the drawn pairs") {
    const auto a = simulate_dataset(default_design(), p, counts, CompoundConfig::LineBar, 1);
    const auto b = simulate_dataset(default_design(), p, counts, CompoundConfig::LineBar, 2);
    for (const auto* set : {&a, &b}) {
      for (const auto& t : *set) {
        const double w = p.weight(t.target_kind);
        const double expect = w * (t.true_target + p.bias(t.target_kind)) +
                              (1.0 - w) * (*t.true_nontarget + p.bias(*t.nontarget_kind));
        REQUIRE(t.estimate == expect);
      }
    }
  }
}

TEST_CASE("simulate_dataset is reproducible and validates counts") {
  const SimulationCounts counts{50, 50, 50, 50};
  const auto a = simulate_dataset(default_design(), ObserverParams{}, counts, CompoundConfig::BarLine, 77);
  const auto b = simulate_dataset(default_design(), ObserverParams{}, counts, CompoundConfig::BarLine, 77);
  CHECK(a == b);
  for (const auto& t : a) {
    if (t.condition == Condition::Compound) {
      CHECK(t.target_half == (t.target_kind == SeriesKind::Bar ? Half::Top : Half::Bottom));
    }
  }
  CHECK(code_of([] {
          simulate_dataset(default_design(), ObserverParams{}, {-1, 0, 0, 0},
                           CompoundConfig::LineBar, 1);
        }) == ErrorCode::InvalidCounts);
  CHECK(code_of([] {
          simulate_dataset(default_design(), ObserverParams{}, {0, 0, 5, 5},
                           CompoundConfig::LineLine, 1);
        }) == ErrorCode::InvalidCounts);
  ObserverParams bad;
  bad.w_bar_target = 1.5;
  CHECK(code_of([&] {
          simulate_dataset(default_design(), bad, counts, CompoundConfig::LineBar, 1);
        }) == ErrorCode::ValidationError);
  CHECK(simulate_dataset(default_design(), ObserverParams{}, {0, 0, 0, 0},
                         CompoundConfig::LineBar, 1)
            .empty());
}

TEST_CASE("same-kind configurations use both halves") {
  const auto trials = simulate_dataset(default_design(), ObserverParams{}, {0, 0, 400, 0},
                                       CompoundConfig::LineLine, 4);
  int top = 0;
  for (const auto& t : trials) {
    CHECK(*t.nontarget_kind == SeriesKind::Line);
    top += t.target_half == Half::Top;
  }
  CHECK(top > 150);
  CHECK(top < 250);
}

TEST_CASE("summarize_errors") {
  SUBCASE("two-point arithmetic") {
    std::vector<TrialRecord> t(2);
    t[0].true_target = 105;
    t[0].estimate = 100;
    t[1].true_target = 105;
    t[1].estimate = 101;
    const auto s = summarize_errors(t, {});
    CHECK(s.n == 2);
    CHECK(s.mean_error == -4.5);
    CHECK(s.se == doctest::Approx(0.5));
  }
  SUBCASE("all zero") {
    std::vector<TrialRecord> t(5);
    const auto s = summarize_errors(t, {});
    CHECK(s.mean_error == 0.0);
    CHECK(s.se == 0.0);
  }
  SUBCASE("empty selection") {
    std::vector<TrialRecord> t(3);
    CHECK(code_of([&] { summarize_errors(t, {Condition::Compound, {}, {}}); }) ==
          ErrorCode::EmptySelection);
  }
  SUBCASE("simulated singles recover the configured bias") {
    const auto trials = simulate_dataset(default_design(), ObserverParams{}, {10000, 0, 0, 0},
                                         CompoundConfig::LineBar, 11);
    const auto s = summarize_errors(trials, {Condition::Single, SeriesKind::Line, {}});
    CHECK(s.n == 10000);
    CHECK(std::abs(s.mean_error - (-4.49)) < 0.20);
  }
}

TEST_CASE("single-trial errors converge to bias and sigma") {
  const auto trials = simulate_dataset(default_design(), ObserverParams{}, {20000, 20000, 0, 0},
                                       CompoundConfig::LineBar, 12);
  const auto line = errors_of(trials, Condition::Single, SeriesKind::Line);
  const auto bar = errors_of(trials, Condition::Single, SeriesKind::Bar);
  CHECK(stats::mean(line) == doctest::Approx(-4.49).epsilon(0.03));
  CHECK(stats::sample_sd(line) == doctest::Approx(6.5).epsilon(0.02));
  CHECK(stats::mean(bar) == doctest::Approx(4.19).epsilon(0.03));
  CHECK(stats::sample_sd(bar) == doctest::Approx(5.1).epsilon(0.02));
}

TEST_CASE("w = 1 compound errors match single errors in law") {
  ObserverParams p;
  p.w_line_target = 1.0;
  const auto trials = simulate_dataset(default_design(), p, {10000, 0, 10000, 0},
                                       CompoundConfig::LineBar, 21);
  const auto single = errors_of(trials, Condition::Single, SeriesKind::Line);
  const auto compound = errors_of(trials, Condition::Compound, SeriesKind::Line);
  CHECK(stats::ks_statistic(single, compound) < 0.03);
}
