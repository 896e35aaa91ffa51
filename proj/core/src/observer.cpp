#include "pullfit/observer.hpp"

#include <cmath>
#include <string>

#include "pullfit/error.hpp"
#include "pullfit/stats.hpp"

namespace pullfit {

void ObserverParams::validate() const {
  const auto check_weight = [](double w, const char* name) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw Error(ErrorCode::ValidationError,
                  std::string("observer.") + name + " must lie in [0,1]");
    }
  };
  const auto check_sigma = [](double s, const char* name) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::ValidationError,
                  std::string("observer.") + name + " must be >= 0");
    }
  };
  check_weight(w_line_target, "w_line_target");
  check_weight(w_bar_target, "w_bar_target");
  check_sigma(sigma_line, "sigma_line");
  check_sigma(sigma_bar, "sigma_bar");
  if (!std::isfinite(bias_line) || !std::isfinite(bias_bar)) {
    throw Error(ErrorCode::ValidationError, "observer biases must be finite");
  }
}

std::string_view to_string(Condition condition) noexcept {
  return condition == Condition::Single ? "single" : "compound";
}

std::string_view to_string(CompoundConfig config) noexcept {
  switch (config) {
    case CompoundConfig::LineBar: return "line-bar";
    case CompoundConfig::BarLine: return "bar-line";
    case CompoundConfig::LineLine: return "line-line";
    case CompoundConfig::BarBar: return "bar-bar";
  }
  return "line-bar";
}

std::optional<CompoundConfig> parse_compound_config(std::string_view text) {
  for (auto c : {CompoundConfig::LineBar, CompoundConfig::BarLine,
                 CompoundConfig::LineLine, CompoundConfig::BarBar}) {
    if (to_string(c) == text) {
      return c;
    }
  }
  return std::nullopt;
}

double sample_single_percept(SeriesKind kind, double true_mean,
                             const ObserverParams& params, Rng& rng) {
  return true_mean + params.bias(kind) + params.sigma(kind) * rng.normal();
}

namespace {

struct CompoundLayout {
  SeriesKind nontarget_kind;
  // nullopt when the target half is drawn per trial
  std::optional<Half> target_half;
};

CompoundLayout layout_for(CompoundConfig config, SeriesKind target) {
  switch (config) {
    case CompoundConfig::LineBar:
      return {target == SeriesKind::Line ? SeriesKind::Bar : SeriesKind::Line,
              target == SeriesKind::Line ? Half::Top : Half::Bottom};
    case CompoundConfig::BarLine:
      return {target == SeriesKind::Line ? SeriesKind::Bar : SeriesKind::Line,
              target == SeriesKind::Bar ? Half::Top : Half::Bottom};
    case CompoundConfig::LineLine:
      return {SeriesKind::Line, std::nullopt};
    case CompoundConfig::BarBar:
      return {SeriesKind::Bar, std::nullopt};
  }
  return {SeriesKind::Bar, Half::Top};
}

Half draw_half(Rng& rng) { return rng.index(2) == 0 ? Half::Top : Half::Bottom; }

Half opposite(Half h) { return h == Half::Top ? Half::Bottom : Half::Top; }

} // namespace

std::vector<TrialRecord> simulate_dataset(const DesignMeans& design,
                                          const ObserverParams& params,
                                          const SimulationCounts& counts,
                                          CompoundConfig config,
                                          std::uint64_t seed) {
  if (counts.n_single_line < 0 || counts.n_single_bar < 0 ||
      counts.n_compound_line_target < 0 || counts.n_compound_bar_target < 0) {
    throw Error(ErrorCode::InvalidCounts, "trial counts must be >= 0");
  }
  if ((config == CompoundConfig::LineLine && counts.n_compound_bar_target > 0) ||
      (config == CompoundConfig::BarBar && counts.n_compound_line_target > 0)) {
    throw Error(ErrorCode::InvalidCounts,
                std::string(to_string(config)) +
                    " displays have no target of the other kind");
  }
  params.validate();

  std::vector<TrialRecord> trials;
  trials.reserve(static_cast<std::size_t>(
      counts.n_single_line + counts.n_single_bar +
      counts.n_compound_line_target + counts.n_compound_bar_target));
  std::int64_t next_id = 0;

  const auto add_singles = [&](SeriesKind kind, std::int64_t n) {
    for (std::int64_t i = 0; i < n; ++i, ++next_id) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(next_id)));
      TrialRecord t;
      t.trial_id = next_id;
      t.condition = Condition::Single;
      t.target_kind = kind;
      t.target_half = draw_half(rng);
      t.true_target = design.means(kind, t.target_half)[rng.index(3)];
      t.estimate = sample_single_percept(kind, t.true_target, params, rng);
      trials.push_back(t);
    }
  };

  const auto add_compounds = [&](SeriesKind target, std::int64_t n) {
    const CompoundLayout layout = layout_for(config, target);
    const double w = params.weight(target);
    for (std::int64_t i = 0; i < n; ++i, ++next_id) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(next_id)));
      TrialRecord t;
      t.trial_id = next_id;
      t.condition = Condition::Compound;
      t.target_kind = target;
      t.target_half = layout.target_half ? *layout.target_half : draw_half(rng);
      t.true_target = design.means(target, t.target_half)[rng.index(3)];
      t.nontarget_kind = layout.nontarget_kind;
      t.true_nontarget =
          design.means(layout.nontarget_kind, opposite(t.target_half))[rng.index(3)];
      const double x_target =
          sample_single_percept(target, t.true_target, params, rng);
      const double x_nontarget = sample_single_percept(
          layout.nontarget_kind, *t.true_nontarget, params, rng);
      t.estimate = w * x_target + (1.0 - w) * x_nontarget;
      trials.push_back(t);
    }
  };

  add_singles(SeriesKind::Line, counts.n_single_line);
  add_singles(SeriesKind::Bar, counts.n_single_bar);
  add_compounds(SeriesKind::Line, counts.n_compound_line_target);
  add_compounds(SeriesKind::Bar, counts.n_compound_bar_target);
  return trials;
}

bool TrialFilter::matches(const TrialRecord& trial) const noexcept {
  return (!condition || trial.condition == *condition) &&
         (!kind || trial.target_kind == *kind) &&
         (!half || trial.target_half == *half);
}

ErrorSummary summarize_errors(std::span<const TrialRecord> trials,
                              const TrialFilter& filter) {
  std::vector<double> errors;
  for (const auto& t : trials) {
    if (filter.matches(t)) {
      errors.push_back(t.error());
    }
  }
  if (errors.empty()) {
    throw Error(ErrorCode::EmptySelection, "no trials match the filter");
  }
  ErrorSummary s;
  s.n = errors.size();
  s.mean_error = stats::mean(errors);
  s.se = stats::sample_sd(errors) / std::sqrt(static_cast<double>(s.n));
  return s;
}

} // namespace pullfit
