#pragma once

#include <span>
#include <vector>

namespace pullfit::stats {

double mean(std::span<const double> values);

/// Sample standard deviation with the n-1 denominator. Zero for n < 2.
double sample_sd(std::span<const double> values);

/// Quantile by linear interpolation between order statistics (R type 7).
/// `sorted` must be ascending and nonempty; p in [0, 1].
double quantile_type7_sorted(std::span<const double> sorted, double p);

/// Same as above on unsorted input (copies).
double quantile_type7(std::span<const double> values, double p);

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Ranks starting at 1, ties receive the average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation (Pearson correlation of average ranks).
double spearman(std::span<const double> x, std::span<const double> y);

} // namespace pullfit::stats
