#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pullfit {

inline constexpr double kDefaultDensityFloor = 1e-12;
inline constexpr std::size_t kDefaultGridSize = 512;
inline constexpr std::size_t kMinGridSize = 16;
/// Grid extends this many bandwidths beyond the sample range.
inline constexpr double kGridPaddingBandwidths = 4.0;

/// Gaussian kernel density tabulated on a uniform grid and read back by
/// linear interpolation. Immutable once built.
class KdeModel {
public:
  KdeModel(double bandwidth, double grid_lo, double grid_step,
           std::vector<double> density, double density_floor);

  double bandwidth() const noexcept { return bandwidth_; }
  double density_floor() const noexcept { return floor_; }
  std::size_t grid_size() const noexcept { return density_.size(); }
  double grid_step() const noexcept { return step_; }
  double grid_lo() const noexcept { return lo_; }
  double grid_hi() const noexcept { return grid_x(density_.size() - 1); }
  double grid_x(std::size_t j) const noexcept {
    return lo_ + static_cast<double>(j) * step_;
  }
  std::span<const double> grid_density() const noexcept { return density_; }

  /// Trapezoidal integral of the tabulated density.
  double trapezoid_mass() const noexcept;

private:
  double bandwidth_;
  double lo_;
  double step_;
  std::vector<double> density_;
  double floor_;
};

/// h = 0.9 * min(sd, IQR / 1.349) * n^(-1/5), sd with n-1 denominator and
/// type-7 quartiles. Throws InsufficientSamples (n < 2) or
/// DegenerateDistribution (all samples equal).
double silverman_bandwidth(std::span<const double> samples);

/// Bandwidth used inside the likelihood. Same rule as silverman_bandwidth,
/// but it never throws on zero spread: when the IQR is zero the sd is used
/// alone, and a sample with no spread at all gets `degenerate_bandwidth`.
double likelihood_bandwidth(std::span<const double> samples,
                            double degenerate_bandwidth);

/// Tabulates (1/(n h)) sum_i phi((x - s_i)/h) on `grid_size` points spanning
/// [min - 4h, max + 4h]. Kernels are truncated at 9h, where phi < 3e-18.
KdeModel build_kde(std::span<const double> samples, double bandwidth,
                   std::size_t grid_size = kDefaultGridSize,
                   double density_floor = kDefaultDensityFloor);

/// Linear interpolation between bracketing grid points, floored at
/// density_floor; the floor alone outside the grid.
double density_at(const KdeModel& kde, double x) noexcept;

/// Sum of ln density_at over the observations. Throws EmptyObservations.
double log_likelihood(const KdeModel& kde, std::span<const double> observations);

} // namespace pullfit
