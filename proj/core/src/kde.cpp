#include "pullfit/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pullfit/error.hpp"
#include "pullfit/stats.hpp"

namespace pullfit {

namespace {

constexpr double kKernelCutoff = 9.0;
constexpr double kSilvermanFactor = 0.9;
constexpr double kIqrToSd = 1.349;

struct Spread {
  double sd = 0.0;
  double iqr = 0.0;
  bool degenerate = false;
};

Spread spread_of(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::InsufficientSamples,
                "bandwidth needs at least 2 samples, got " +
                    std::to_string(samples.size()));
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  Spread s;
  s.degenerate = sorted.front() == sorted.back();
  s.sd = stats::sample_sd(samples);
  s.iqr = stats::quantile_type7_sorted(sorted, 0.75) -
          stats::quantile_type7_sorted(sorted, 0.25);
  return s;
}

double rule_of_thumb(const Spread& s, std::size_t n) {
  // a zero IQR with nonzero sd (heavily tied sample) falls back to the sd
  const double scale = s.iqr > 0.0 ? std::min(s.sd, s.iqr / kIqrToSd) : s.sd;
  return kSilvermanFactor * scale * std::pow(static_cast<double>(n), -0.2);
}

} // namespace

KdeModel::KdeModel(double bandwidth, double grid_lo, double grid_step,
                   std::vector<double> density, double density_floor)
    : bandwidth_(bandwidth),
      lo_(grid_lo),
      step_(grid_step),
      density_(std::move(density)),
      floor_(density_floor) {
  if (!(bandwidth_ > 0.0) || !std::isfinite(bandwidth_)) {
    throw Error(ErrorCode::InvalidBandwidth, "bandwidth must be positive");
  }
  if (density_.size() < 2 || !(step_ > 0.0) || !std::isfinite(lo_)) {
    throw Error(ErrorCode::InvalidGrid, "grid needs >= 2 increasing points");
  }
  if (!(floor_ > 0.0)) {
    throw Error(ErrorCode::ValidationError, "density floor must be positive");
  }
}

double KdeModel::trapezoid_mass() const noexcept {
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < density_.size(); ++j) {
    sum += 0.5 * (density_[j] + density_[j + 1]);
  }
  return sum * step_;
}

double silverman_bandwidth(std::span<const double> samples) {
  const Spread s = spread_of(samples);
  if (s.degenerate) {
    throw Error(ErrorCode::DegenerateDistribution,
                "all samples are equal; bandwidth undefined");
  }
  return rule_of_thumb(s, samples.size());
}

double likelihood_bandwidth(std::span<const double> samples,
                            double degenerate_bandwidth) {
  const Spread s = spread_of(samples);
  if (s.degenerate) {
    return degenerate_bandwidth;
  }
  return rule_of_thumb(s, samples.size());
}

KdeModel build_kde(std::span<const double> samples, double bandwidth,
                   std::size_t grid_size, double density_floor) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw Error(ErrorCode::InvalidBandwidth, "bandwidth must be positive");
  }
  if (grid_size < kMinGridSize) {
    throw Error(ErrorCode::InvalidGrid,
                "grid size must be >= " + std::to_string(kMinGridSize));
  }
  if (samples.empty()) {
    throw Error(ErrorCode::InsufficientSamples, "no samples to smooth");
  }
  const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *min_it - kGridPaddingBandwidths * bandwidth;
  const double hi = *max_it + kGridPaddingBandwidths * bandwidth;
  const double step = (hi - lo) / static_cast<double>(grid_size - 1);
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::NonFinite, "non-finite sample");
  }

  std::vector<double> acc(grid_size, 0.0);
  const double d = step / bandwidth;
  const auto last = static_cast<double>(grid_size - 1);
  const double q = std::exp(-d * d);
  for (double s : samples) {
    const double first_t = std::max(0.0, std::ceil((s - kKernelCutoff * bandwidth - lo) / step));
    const double last_t = std::min(last, std::floor((s + kKernelCutoff * bandwidth - lo) / step));
    if (first_t > last_t) {
      continue;
    }
    const auto j0 = static_cast<std::size_t>(first_t);
    const auto j1 = static_cast<std::size_t>(last_t);
    double u = (lo + static_cast<double>(j0) * step - s) / bandwidth;
    if (d > 0.25) {
      for (std::size_t j = j0; j <= j1; ++j, u += d) {
        acc[j] += std::exp(-0.5 * u * u);
      }
      continue;
    }
    // exp(-(u+d)^2/2) = exp(-u^2/2) * exp(-u d - d^2/2); the second factor
    // itself shrinks by exp(-d^2) per step
    double g = std::exp(-0.5 * u * u);
    double r = std::exp(-u * d - 0.5 * d * d);
    for (std::size_t j = j0; j <= j1; ++j) {
      acc[j] += g;
      g *= r;
      r *= q;
    }
  }

  const double norm = 1.0 / (static_cast<double>(samples.size()) * bandwidth *
                             std::sqrt(2.0 * std::numbers::pi));
  for (double& a : acc) {
    a *= norm;
  }
  return KdeModel(bandwidth, lo, step, std::move(acc), density_floor);
}

double density_at(const KdeModel& kde, double x) noexcept {
  const double floor = kde.density_floor();
  if (!(x >= kde.grid_lo() && x <= kde.grid_hi())) {
    return floor;
  }
  const auto density = kde.grid_density();
  const double t = (x - kde.grid_lo()) / kde.grid_step();
  auto j = static_cast<std::size_t>(t);
  if (j >= density.size() - 1) {
    j = density.size() - 2;
  }
  const double frac = t - static_cast<double>(j);
  const double value = density[j] + frac * (density[j + 1] - density[j]);
  return std::max(value, floor);
}

double log_likelihood(const KdeModel& kde, std::span<const double> observations) {
  if (observations.empty()) {
    throw Error(ErrorCode::EmptyObservations, "no observations to score");
  }
  double total = 0.0;
  for (double y : observations) {
    total += std::log(density_at(kde, y));
  }
  return total;
}

} // namespace pullfit
