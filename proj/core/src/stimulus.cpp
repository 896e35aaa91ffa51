#include "pullfit/stimulus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pullfit/error.hpp"

namespace pullfit {

std::string_view to_string(SeriesKind kind) noexcept {
  return kind == SeriesKind::Line ? "line" : "bar";
}

std::string_view to_string(Half half) noexcept {
  return half == Half::Top ? "top" : "bottom";
}

namespace {

constexpr double kSeparationTolerance = 1e-9;

void check_triple(const MeanTriple& triple, const char* name, Half half,
                  double separation) {
  const auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::ValidationError,
                std::string("design.") + name + ": " + what);
  };
  for (double m : triple) {
    if (!std::isfinite(m) || m < kFrameBottom || m > kFrameTop) {
      fail("means must lie in the frame [0,140]");
    }
    if (half == Half::Top && m < kFrameMid) {
      fail("top-half means must be >= 70");
    }
    if (half == Half::Bottom && m > kFrameMid) {
      fail("bottom-half means must be <= 70");
    }
  }
  for (std::size_t i = 0; i + 1 < triple.size(); ++i) {
    if (!(triple[i] < triple[i + 1])) {
      fail("means must be sorted ascending");
    }
    if (std::abs(triple[i + 1] - triple[i] - separation) > kSeparationTolerance) {
      fail("adjacent means must be separated by exactly " +
           std::to_string(static_cast<int>(separation)) + " px");
    }
  }
}

} // namespace

DesignMeans::DesignMeans(MeanTriple line_top, MeanTriple line_bottom,
                         MeanTriple bar_top, MeanTriple bar_bottom)
    : line_top_(line_top),
      line_bottom_(line_bottom),
      bar_top_(bar_top),
      bar_bottom_(bar_bottom) {
  check_triple(line_top_, "line_top", Half::Top, kLineSeparation);
  check_triple(line_bottom_, "line_bottom", Half::Bottom, kLineSeparation);
  check_triple(bar_top_, "bar_top", Half::Top, kBarSeparation);
  check_triple(bar_bottom_, "bar_bottom", Half::Bottom, kBarSeparation);
}

const MeanTriple& DesignMeans::means(SeriesKind kind, Half half) const noexcept {
  if (kind == SeriesKind::Line) {
    return half == Half::Top ? line_top_ : line_bottom_;
  }
  return half == Half::Top ? bar_top_ : bar_bottom_;
}

DesignMeans default_design() {
  return DesignMeans({93.0, 105.0, 117.0}, {23.0, 35.0, 47.0},
                     {100.0, 105.0, 110.0}, {30.0, 35.0, 40.0});
}

std::vector<double> generate_series(const SeriesSpec& spec, Rng& rng) {
  if (spec.n_points == 0) {
    throw Error(ErrorCode::InvalidSpec, "series needs at least one point");
  }
  if (!(spec.point_noise_sd >= 0.0)) {
    throw Error(ErrorCode::InvalidSpec, "point noise sd must be >= 0");
  }
  std::vector<double> points(spec.n_points, spec.mean);
  if (spec.profile == Profile::Uniform) {
    return points;
  }
  for (double& p : points) {
    p = std::clamp(rng.normal(spec.mean, spec.point_noise_sd), kFrameBottom,
                   kFrameTop);
  }
  return points;
}

const TruePair& sample_true_pair(std::span<const TruePair> pairs, Rng& rng) {
  if (pairs.empty()) {
    throw Error(ErrorCode::EmptyDesign, "no true pairs to sample from");
  }
  return pairs[rng.index(pairs.size())];
}

std::vector<TruePair> design_pairs(const DesignMeans& design,
                                   SeriesKind target_kind, Half target_half,
                                   SeriesKind nontarget_kind) {
  const Half other = target_half == Half::Top ? Half::Bottom : Half::Top;
  std::vector<TruePair> pairs;
  for (double t : design.means(target_kind, target_half)) {
    for (double nt : design.means(nontarget_kind, other)) {
      pairs.push_back({target_kind, t, nt, nontarget_kind});
    }
  }
  return pairs;
}

} // namespace pullfit
