#include "pullfit/synthesis.hpp"

#include <cmath>
#include <string>

#include "pullfit/error.hpp"

namespace pullfit {

EmpiricalDistribution::EmpiricalDistribution(SeriesKind kind,
                                             std::vector<double> errors)
    : kind_(kind), errors_(std::move(errors)) {
  if (errors_.empty()) {
    throw Error(ErrorCode::InsufficientSingles,
                "empirical error distribution is empty");
  }
  for (double e : errors_) {
    if (!std::isfinite(e)) {
      throw Error(ErrorCode::ValidationError,
                  "empirical error distribution contains a non-finite value");
    }
  }
}

bool is_obviously_wrong(const TrialRecord& trial) noexcept {
  constexpr double quarter = (kFrameTop - kFrameBottom) / 4.0;
  if (trial.target_half == Half::Top) {
    return trial.estimate >= kFrameBottom && trial.estimate < kFrameBottom + quarter;
  }
  return trial.estimate > kFrameTop - quarter && trial.estimate <= kFrameTop;
}

EmpiricalDistribution empirical_from_trials(std::span<const TrialRecord> trials,
                                            SeriesKind kind) {
  std::vector<double> errors;
  for (const auto& t : trials) {
    if (t.condition == Condition::Single && t.target_kind == kind &&
        !is_obviously_wrong(t)) {
      errors.push_back(t.error());
    }
  }
  if (errors.size() < 2) {
    throw Error(ErrorCode::InsufficientSingles,
                "need at least 2 usable single " + std::string(to_string(kind)) +
                    " trials, found " + std::to_string(errors.size()));
  }
  return EmpiricalDistribution(kind, std::move(errors));
}

double draw_error(const EmpiricalDistribution& dist, Rng& rng) {
  const auto errors = dist.errors();
  return errors[rng.index(errors.size())];
}

namespace {

void check_synthesis_args(std::span<const TruePair> pairs, std::size_t m) {
  if (pairs.empty()) {
    throw Error(ErrorCode::EmptyDesign, "no true pairs to synthesize from");
  }
  if (m == 0) {
    throw Error(ErrorCode::Precondition, "synthetic sample size must be >= 1");
  }
}

} // namespace

SyntheticSamples synthesize_compound(const EmpiricalDistribution& target_dist,
                                     const EmpiricalDistribution& nontarget_dist,
                                     std::span<const TruePair> pairs, double w,
                                     std::size_t m, Rng& rng) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw Error(ErrorCode::WeightOutOfRange,
                "mixture weight " + std::to_string(w) + " outside [0,1]");
  }
  check_synthesis_args(pairs, m);

  SyntheticSamples out;
  out.weight = w;
  out.target_kind = target_dist.kind();
  out.values.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const TruePair& pair = sample_true_pair(pairs, rng);
    const double x_target = pair.target_true + draw_error(target_dist, rng);
    const double x_nontarget = pair.nontarget_true + draw_error(nontarget_dist, rng);
    out.values[i] = w * x_target + (1.0 - w) * x_nontarget;
  }
  return out;
}

PerceptDraws::PerceptDraws(const EmpiricalDistribution& target_dist,
                           const EmpiricalDistribution& nontarget_dist,
                           std::span<const TruePair> pairs, std::size_t m,
                           Rng& rng) {
  check_synthesis_args(pairs, m);
  target_.resize(m);
  nontarget_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const TruePair& pair = sample_true_pair(pairs, rng);
    target_[i] = pair.target_true + draw_error(target_dist, rng);
    nontarget_[i] = pair.nontarget_true + draw_error(nontarget_dist, rng);
  }
}

void PerceptDraws::combine(double w, std::vector<double>& out) const {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw Error(ErrorCode::WeightOutOfRange,
                "mixture weight " + std::to_string(w) + " outside [0,1]");
  }
  out.resize(target_.size());
  const double v = 1.0 - w;
  for (std::size_t i = 0; i < target_.size(); ++i) {
    out[i] = w * target_[i] + v * nontarget_[i];
  }
}

} // namespace pullfit
