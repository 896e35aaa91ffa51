#pragma once

#include <cstddef>
#include <functional>

namespace pullfit {

struct ScalarMinimum {
  double x = 0.0;
  double fx = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Bounded derivative-free minimization on [lo, hi] by Brent's combination of
/// golden-section steps and successive parabolic interpolation. The search
/// starts from `start` (clamped into the interval) instead of the usual
/// golden-section point, so different starts can settle in different places
/// on a flat or noisy objective. `tol` is the absolute tolerance on x.
ScalarMinimum brent_minimize(const std::function<double(double)>& f, double lo,
                             double hi, double start, double tol,
                             std::size_t max_evaluations = 200);

} // namespace pullfit
