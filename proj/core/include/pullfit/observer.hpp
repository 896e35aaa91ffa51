#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pullfit/random.hpp"
#include "pullfit/stimulus.hpp"

namespace pullfit {

/// Generative ground truth for synthetic observers. Bias defaults are the
/// overall single-series mean errors measured for lines and bars; spreads
/// are simulation defaults.
struct ObserverParams {
  double bias_line = -4.49;
  double sigma_line = 6.5;
  double bias_bar = 4.19;
  double sigma_bar = 5.1;
  double w_line_target = 0.945;
  double w_bar_target = 0.971;

  double bias(SeriesKind kind) const noexcept {
    return kind == SeriesKind::Line ? bias_line : bias_bar;
  }
  double sigma(SeriesKind kind) const noexcept {
    return kind == SeriesKind::Line ? sigma_line : sigma_bar;
  }
  double weight(SeriesKind kind) const noexcept {
    return kind == SeriesKind::Line ? w_line_target : w_bar_target;
  }

  /// Throws ValidationError when a weight leaves [0,1] or a sigma is negative.
  void validate() const;
};

enum class Condition { Single, Compound };
std::string_view to_string(Condition condition) noexcept;

struct TrialRecord {
  std::int64_t trial_id = 0;
  Condition condition = Condition::Single;
  SeriesKind target_kind = SeriesKind::Line;
  Half target_half = Half::Top;
  double true_target = 0.0;
  std::optional<SeriesKind> nontarget_kind;
  std::optional<double> true_nontarget;
  double estimate = 0.0;

  double error() const noexcept { return estimate - true_target; }

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Which two series share a compound display. The first kind named sits in
/// the top half. Same-kind configurations pick the target half at random.
enum class CompoundConfig { LineBar, BarLine, LineLine, BarBar };
std::string_view to_string(CompoundConfig config) noexcept;
std::optional<CompoundConfig> parse_compound_config(std::string_view text);

struct SimulationCounts {
  std::int64_t n_single_line = 1728;
  std::int64_t n_single_bar = 1728;
  std::int64_t n_compound_line_target = 773;
  std::int64_t n_compound_bar_target = 779;
};

/// true_mean + Normal(bias_kind, sigma_kind). Always consumes one normal
/// draw, also when sigma is zero.
double sample_single_percept(SeriesKind kind, double true_mean,
                             const ObserverParams& params, Rng& rng);

/// Trials are emitted in the order single-line, single-bar, compound
/// line-target, compound bar-target with dense ids from 0. Trial `i` draws
/// from its own stream `derive_seed(seed, i)`, so the output does not depend
/// on how generation is scheduled.
std::vector<TrialRecord> simulate_dataset(const DesignMeans& design,
                                          const ObserverParams& params,
                                          const SimulationCounts& counts,
                                          CompoundConfig config,
                                          std::uint64_t seed);

struct TrialFilter {
  std::optional<Condition> condition;
  std::optional<SeriesKind> kind;
  std::optional<Half> half;

  bool matches(const TrialRecord& trial) const noexcept;
};

struct ErrorSummary {
  std::size_t n = 0;
  double mean_error = 0.0;
  double se = 0.0;
};

/// Mean and standard error of estimate - true_target over the matching
/// trials. Throws EmptySelection when nothing matches.
ErrorSummary summarize_errors(std::span<const TrialRecord> trials,
                              const TrialFilter& filter);

} // namespace pullfit
