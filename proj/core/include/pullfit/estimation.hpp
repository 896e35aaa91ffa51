#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pullfit/observer.hpp"
#include "pullfit/stimulus.hpp"
#include "pullfit/synthesis.hpp"

namespace pullfit {

struct FitConfig {
  std::size_t m_samples = 10000;
  std::size_t repeats = 50;
  double start_lo = 0.9;
  double start_hi = 1.0;
  double weight_lo = 0.0;
  double weight_hi = 1.0;
  std::size_t grid_size = 512;
  double density_floor = 1e-12;
  double optimizer_tol = 1e-4;
  std::uint64_t base_seed = 42;
  double hdi_mass = 0.95;
  /// KDE bandwidth when a synthetic sample has no spread at all (point-mass
  /// error distributions with a single true pair).
  double degenerate_bandwidth = 1.0;

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;
};

/// Everything the likelihood of one target kind needs: the two pooled error
/// distributions, the true (target, non-target) pairs of the compound trials
/// being fit, and their observed estimates.
struct FitContext {
  SeriesKind target_kind;
  EmpiricalDistribution target_dist;
  EmpiricalDistribution nontarget_dist;
  std::vector<TruePair> pairs;
  std::vector<double> observations;
};

/// Collects the compound trials with the given target kind. Returns nullopt
/// when there are none. Throws ValidationError when those trials mix
/// non-target kinds, and InsufficientSingles when either kind lacks singles.
std::optional<FitContext> make_fit_context(std::span<const TrialRecord> trials,
                                           SeriesKind target_kind);

/// Negative approximate log-likelihood of the observations at weight `w`.
/// The synthetic draws come from Rng(crn_seed), so for a fixed seed this is
/// a deterministic function of w.
double nll_for_weight(double w, const FitContext& ctx, const FitConfig& cfg,
                      std::uint64_t crn_seed);

/// nll_for_weight with the percept draws cached once per seed. Evaluations
/// are bit-identical to nll_for_weight with the same seed.
class CrnObjective {
public:
  CrnObjective(const FitContext& ctx, const FitConfig& cfg,
               std::uint64_t crn_seed);

  double operator()(double w) const;
  std::size_t evaluations() const noexcept { return evaluations_; }

private:
  const FitContext* ctx_;
  const FitConfig* cfg_;
  PerceptDraws draws_;
  mutable std::vector<double> buffer_;
  mutable std::size_t evaluations_ = 0;
};

struct WeightFit {
  double w_hat = 1.0;
  double loglik = 0.0;
  std::size_t evaluations = 0;
};

/// Maximizes the CRN likelihood over [weight_lo, weight_hi] starting from
/// start_w, which must lie in [start_lo, start_hi] (Precondition otherwise).
WeightFit fit_weight(const FitContext& ctx, const FitConfig& cfg,
                     std::uint64_t crn_seed, double start_w);

/// Log-likelihood of the ideal observer (target weight fixed at 1).
double optimal_observer_loglik(const FitContext& ctx, const FitConfig& cfg,
                               std::uint64_t crn_seed);

/// 2k - 2 loglik.
double aic(int k, double loglik) noexcept;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Shortest window holding ceil(mass * n) consecutive sorted values; ties go
/// to the smallest lower bound. Throws EmptyValues, Precondition on mass.
Interval hdi(std::span<const double> values, double mass);

/// One optimization repeat. Weight fields of a kind that was not fitted hold
/// NaN.
struct RepeatRecord {
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  double start_w_line = 0.0;
  double start_w_bar = 0.0;
  double w_line_hat = 0.0;
  double w_bar_hat = 0.0;
  double loglik_mixture = 0.0;
  double loglik_optimal = 0.0;
  double aic_mixture = 0.0;
  double aic_optimal = 0.0;
  double delta_aic = 0.0;
};

struct FitResult {
  FitConfig config;
  bool line_fitted = false;
  bool bar_fitted = false;
  int parameter_count = 0;
  std::size_t n_observations_line = 0;
  std::size_t n_observations_bar = 0;
  std::vector<std::string> warnings;
  std::vector<RepeatRecord> per_repeat;

  double mean_w_line = 0.0;
  double mean_w_bar = 0.0;
  double mean_delta_aic = 0.0;
  Interval hdi_w_line;
  Interval hdi_w_bar;
  Interval hdi_delta_aic;
  std::size_t n_positive_delta = 0;

  /// Recomputes the aggregate fields from per_repeat.
  void summarize();
};

/// Seeds used inside repeat `r` are derived from base_seed: the repeat seed
/// is derive_seed(base_seed, r); start weights come from stream 0 of it, the
/// mixture fits from streams 1 (line) and 2 (bar), the ideal-observer
/// baselines from streams 3 (line) and 4 (bar).
struct RepeatSeeds {
  std::uint64_t repeat;
  std::uint64_t starts;
  std::uint64_t mixture_line;
  std::uint64_t mixture_bar;
  std::uint64_t optimal_line;
  std::uint64_t optimal_bar;
};
RepeatSeeds repeat_seeds(std::uint64_t base_seed, std::size_t repeat) noexcept;

/// Worker count from PULLFIT_THREADS, else the hardware concurrency.
std::size_t default_worker_count();

/// The full multi-start protocol. Throws MissingCondition when no target
/// kind has compound observations; a single missing kind is fitted alone
/// (k = 1) and noted in `warnings`. Output does not depend on `workers`.
FitResult fit_repeats(std::span<const TrialRecord> trials, const FitConfig& cfg,
                      std::size_t workers = 0);

} // namespace pullfit
