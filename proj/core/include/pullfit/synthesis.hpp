#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pullfit/observer.hpp"
#include "pullfit/random.hpp"
#include "pullfit/stimulus.hpp"

namespace pullfit {

/// Pooled single-series estimation errors (estimate - true mean), resampled
/// with replacement. Never empty, never non-finite.
class EmpiricalDistribution {
public:
  EmpiricalDistribution(SeriesKind kind, std::vector<double> errors);

  SeriesKind kind() const noexcept { return kind_; }
  std::span<const double> errors() const noexcept { return errors_; }
  std::size_t size() const noexcept { return errors_.size(); }

private:
  SeriesKind kind_;
  std::vector<double> errors_;
};

struct SyntheticSamples {
  std::vector<double> values;
  double weight = 1.0;
  SeriesKind target_kind = SeriesKind::Line;
};

/// An estimate of a single-series stimulus is "obviously wrong" when it lands
/// in the far quarter of the frame: below 35 for a top-half stimulus, above
/// 105 for a bottom-half one.
bool is_obviously_wrong(const TrialRecord& trial) noexcept;

/// Errors of every surviving single trial of `kind`, pooled over true means.
/// Throws InsufficientSingles when fewer than two survive.
EmpiricalDistribution empirical_from_trials(std::span<const TrialRecord> trials,
                                            SeriesKind kind);

double draw_error(const EmpiricalDistribution& dist, Rng& rng);

/// Builds M synthetic compound estimates. Each sample consumes the stream in
/// the fixed order (pair, target error, non-target error) and returns
/// w * (target_true + e_t) + (1 - w) * (nontarget_true + e_nt).
SyntheticSamples synthesize_compound(const EmpiricalDistribution& target_dist,
                                     const EmpiricalDistribution& nontarget_dist,
                                     std::span<const TruePair> pairs, double w,
                                     std::size_t m, Rng& rng);

/// The two percepts behind each synthetic sample, drawn once with exactly the
/// stream consumption of synthesize_compound. `combine(w)` reproduces
/// synthesize_compound's values bit-for-bit for any w, which lets one
/// optimization run reuse its random numbers across candidate weights.
class PerceptDraws {
public:
  PerceptDraws(const EmpiricalDistribution& target_dist,
               const EmpiricalDistribution& nontarget_dist,
               std::span<const TruePair> pairs, std::size_t m, Rng& rng);

  std::size_t size() const noexcept { return target_.size(); }
  std::span<const double> target_percepts() const noexcept { return target_; }
  std::span<const double> nontarget_percepts() const noexcept {
    return nontarget_;
  }

  void combine(double w, std::vector<double>& out) const;

private:
  std::vector<double> target_;
  std::vector<double> nontarget_;
};

} // namespace pullfit
