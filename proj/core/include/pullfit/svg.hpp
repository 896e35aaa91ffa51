#pragma once

#include <span>
#include <string>

namespace pullfit::svg {

/// Histogram of per-repeat AIC differences with a dashed zero line.
std::string delta_aic_histogram(std::span<const double> delta_aic,
                                const std::string& title);

/// Observed estimates as a histogram overlaid with a density curve of
/// model-synthesized estimates.
std::string fit_overlay(std::span<const double> observed,
                        std::span<const double> synthetic,
                        const std::string& title);

} // namespace pullfit::svg
