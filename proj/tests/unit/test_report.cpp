#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "pullfit/report.hpp"
#include "pullfit/svg.hpp"
#include "test_support.hpp"

using namespace pullfit;
using pullfit::testing::code_of;

namespace {

FitResult sample_result(bool bar_fitted) {
  FitResult r;
  r.config.repeats = 3;
  r.config.base_seed = 18446744073709551557ull;
  r.line_fitted = true;
  r.bar_fitted = bar_fitted;
  r.parameter_count = bar_fitted ? 2 : 1;
  r.n_observations_line = 773;
  r.n_observations_bar = bar_fitted ? 779 : 0;
  if (!bar_fitted) r.warnings.push_back("no compound trials with a bar target");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < 3; ++i) {
    RepeatRecord rec;
    rec.repeat = i;
    rec.seed = 1000 + i;
    rec.start_w_line = 0.91 + 0.01 * i;
    rec.start_w_bar = bar_fitted ? 0.95 : nan;
    rec.w_line_hat = 0.944 + 0.001 * i;
    rec.w_bar_hat = bar_fitted ? 0.97 - 0.002 * i : nan;
    rec.loglik_mixture = -7000.125 - i;
    rec.loglik_optimal = -7070.5 - 2 * i;
    rec.aic_mixture = 2 * r.parameter_count - 2 * rec.loglik_mixture;
    rec.aic_optimal = -2 * rec.loglik_optimal;
    rec.delta_aic = rec.aic_mixture - rec.aic_optimal;
    r.per_repeat.push_back(rec);
  }
  r.summarize();
  return r;
}

} // namespace

TEST_CASE("summarize") {
  const FitResult r = sample_result(true);
  CHECK(r.mean_w_line == doctest::Approx(0.945));
  CHECK(r.mean_w_bar == doctest::Approx(0.968));
  CHECK(r.n_positive_delta == 0);
  CHECK(r.hdi_w_line.lo <= r.mean_w_line);
  CHECK(r.hdi_w_line.hi >= r.mean_w_line);
}

TEST_CASE("json round trip") {
  for (bool bar : {true, false}) {
    const FitResult r = sample_result(bar);
    const auto doc = to_json(r);
    const FitResult back = fit_result_from_json(nlohmann::json::parse(doc.dump()));
    CHECK(to_json(back) == doc);
    CHECK(back.config.base_seed == r.config.base_seed);
    CHECK(back.per_repeat.size() == 3);
    CHECK(back.per_repeat[2].delta_aic == r.per_repeat[2].delta_aic);
    CHECK(std::isnan(back.mean_w_bar) == !bar);
    if (!bar) CHECK(doc["mean_w_bar"].is_null());
  }
}

TEST_CASE("malformed report") {
  CHECK(code_of([] { fit_result_from_json(nlohmann::json::object()); }) == ErrorCode::ParseError);
  CHECK(code_of([] { fit_result_from_json(nlohmann::json::parse(R"({"config": 3})")); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("repeats table") {
  std::ostringstream out;
  write_repeats_csv(out, sample_result(false));
  std::istringstream in(out.str());
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == kRepeatsHeader);
  CHECK(first == "0,1000,0.91,NA,0.944,NA,-7000.125,-7070.5,14002.25,14141,-138.75");
}

TEST_CASE("summary text") {
  const std::string text = summary_text(sample_result(false));
  CHECK(text.find("mean weight, line target: 0.945") != std::string::npos);
  CHECK(text.find("mean weight, bar target") == std::string::npos);
  CHECK(text.find("warning: no compound trials") != std::string::npos);
  CHECK(text.find("0 of 3") != std::string::npos);
}

TEST_CASE("svg output is well formed") {
  const std::vector<double> deltas{-140, -120.5, -133, 2};
  const std::string hist = svg::delta_aic_histogram(deltas, "AIC");
  CHECK(hist.find("<svg") != std::string::npos);
  CHECK(hist.find("</svg>") != std::string::npos);
  const std::vector<double> synthetic{1, 2, 2.5, 3, 3.5, 4};
  const std::string overlay = svg::fit_overlay(deltas, synthetic, "fit");
  CHECK(overlay.find("</svg>") != std::string::npos);
}
