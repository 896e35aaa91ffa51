#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "pullfit/random.hpp"

namespace pullfit {

/// Vertical display-frame coordinates in pixels; 0 is the frame bottom.
inline constexpr double kFrameBottom = 0.0;
inline constexpr double kFrameTop = 140.0;
inline constexpr double kFrameMid = 70.0;

inline constexpr double kLineSeparation = 12.0;
inline constexpr double kBarSeparation = 5.0;

enum class SeriesKind { Line, Bar };
enum class Half { Top, Bottom };
enum class Profile { Noisy, Uniform };

std::string_view to_string(SeriesKind kind) noexcept;
std::string_view to_string(Half half) noexcept;

struct SeriesSpec {
  SeriesKind kind = SeriesKind::Line;
  Half half = Half::Top;
  Profile profile = Profile::Noisy;
  double mean = 105.0;
  double point_noise_sd = 4.0;
  std::size_t n_points = 48;
};

using MeanTriple = std::array<double, 3>;

/// Low/medium/high true means for each series kind and frame half.
/// Construction validates ordering, frame bounds, halves and the fixed
/// 12 px (line) / 5 px (bar) separations.
class DesignMeans {
public:
  DesignMeans(MeanTriple line_top, MeanTriple line_bottom, MeanTriple bar_top,
              MeanTriple bar_bottom);

  const MeanTriple& line_top() const noexcept { return line_top_; }
  const MeanTriple& line_bottom() const noexcept { return line_bottom_; }
  const MeanTriple& bar_top() const noexcept { return bar_top_; }
  const MeanTriple& bar_bottom() const noexcept { return bar_bottom_; }

  const MeanTriple& means(SeriesKind kind, Half half) const noexcept;

  friend bool operator==(const DesignMeans&, const DesignMeans&) = default;

private:
  MeanTriple line_top_;
  MeanTriple line_bottom_;
  MeanTriple bar_top_;
  MeanTriple bar_bottom_;
};

struct TruePair {
  SeriesKind target_kind = SeriesKind::Line;
  double target_true = 0.0;
  double nontarget_true = 0.0;
  SeriesKind nontarget_kind = SeriesKind::Bar;

  friend bool operator==(const TruePair&, const TruePair&) = default;
};

/// Line means {93,105,117}/{23,35,47}, bar means {100,105,110}/{30,35,40}.
DesignMeans default_design();

/// Throws InvalidSpec on n_points == 0 or negative noise. Noisy points are
/// clamped to the frame; uniform profiles never touch the stream.
std::vector<double> generate_series(const SeriesSpec& spec, Rng& rng);

/// Uniform draw from `pairs`; throws EmptyDesign when empty.
const TruePair& sample_true_pair(std::span<const TruePair> pairs, Rng& rng);

/// Cross product of the target kind's triple in `target_half` with the
/// non-target kind's triple in the opposite half (9 pairs).
std::vector<TruePair> design_pairs(const DesignMeans& design,
                                   SeriesKind target_kind, Half target_half,
                                   SeriesKind nontarget_kind);

} // namespace pullfit
