#include "pullfit/estimation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "pullfit/error.hpp"
#include "pullfit/kde.hpp"
#include "pullfit/optimize.hpp"
#include "pullfit/stats.hpp"

namespace pullfit {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::ValidationError, what);
}

double score(std::span<const double> synthetic, const FitContext& ctx,
             const FitConfig& cfg) {
  const double h = likelihood_bandwidth(synthetic, cfg.degenerate_bandwidth);
  const KdeModel kde = build_kde(synthetic, h, cfg.grid_size, cfg.density_floor);
  return -log_likelihood(kde, ctx.observations);
}

void check_weight(double w, const FitConfig& cfg) {
  if (!(w >= cfg.weight_lo && w <= cfg.weight_hi)) {
    throw Error(ErrorCode::WeightOutOfRange,
                "weight " + std::to_string(w) + " outside [" +
                    std::to_string(cfg.weight_lo) + ", " +
                    std::to_string(cfg.weight_hi) + "]");
  }
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

void FitConfig::validate() const {
  if (m_samples < 2) invalid("fit.m_samples must be >= 2");
  if (repeats < 1) invalid("fit.repeats must be >= 1");
  if (!(weight_lo >= 0.0 && weight_lo < weight_hi && weight_hi <= 1.0)) {
    invalid("fit weight bounds must satisfy 0 <= weight_lo < weight_hi <= 1");
  }
  if (!(start_lo <= start_hi && start_lo >= weight_lo && start_hi <= weight_hi)) {
    invalid("fit start interval [start_lo, start_hi] must lie within the weight bounds");
  }
  if (grid_size < kMinGridSize) invalid("fit.grid_size must be >= 16");
  if (!(density_floor > 0.0)) invalid("fit.density_floor must be > 0");
  if (!(optimizer_tol > 0.0)) invalid("fit.optimizer_tol must be > 0");
  if (!(hdi_mass > 0.0 && hdi_mass <= 1.0)) invalid("fit.hdi_mass must lie in (0,1]");
  if (!(degenerate_bandwidth > 0.0)) invalid("fit.degenerate_bandwidth must be > 0");
}

std::optional<FitContext> make_fit_context(std::span<const TrialRecord> trials,
                                           SeriesKind target_kind) {
  std::optional<SeriesKind> nontarget_kind;
  std::vector<TruePair> pairs;
  std::vector<double> observations;
  for (const auto& t : trials) {
    if (t.condition != Condition::Compound || t.target_kind != target_kind) {
      continue;
    }
    if (!t.nontarget_kind || !t.true_nontarget) {
      throw Error(ErrorCode::ConsistencyError,
                  "compound trial " + std::to_string(t.trial_id) +
                      " has no non-target");
    }
    if (nontarget_kind && *nontarget_kind != *t.nontarget_kind) {
      throw Error(ErrorCode::ValidationError,
                  std::string(to_string(target_kind)) +
                      "-target compound trials mix non-target kinds");
    }
    nontarget_kind = t.nontarget_kind;
    pairs.push_back({target_kind, t.true_target, *t.true_nontarget, *t.nontarget_kind});
    observations.push_back(t.estimate);
  }
  if (observations.empty()) {
    return std::nullopt;
  }
  return FitContext{target_kind, empirical_from_trials(trials, target_kind),
                    empirical_from_trials(trials, *nontarget_kind),
                    std::move(pairs), std::move(observations)};
}

double nll_for_weight(double w, const FitContext& ctx, const FitConfig& cfg,
                      std::uint64_t crn_seed) {
  check_weight(w, cfg);
  Rng rng(crn_seed);
  const SyntheticSamples synthetic = synthesize_compound(
      ctx.target_dist, ctx.nontarget_dist, ctx.pairs, w, cfg.m_samples, rng);
  return score(synthetic.values, ctx, cfg);
}

namespace {

PerceptDraws draw_percepts(const FitContext& ctx, const FitConfig& cfg,
                           std::uint64_t crn_seed) {
  Rng rng(crn_seed);
  return PerceptDraws(ctx.target_dist, ctx.nontarget_dist, ctx.pairs,
                      cfg.m_samples, rng);
}

} // namespace

CrnObjective::CrnObjective(const FitContext& ctx, const FitConfig& cfg,
                           std::uint64_t crn_seed)
    : ctx_(&ctx), cfg_(&cfg), draws_(draw_percepts(ctx, cfg, crn_seed)) {}

double CrnObjective::operator()(double w) const {
  ++evaluations_;
  draws_.combine(w, buffer_);
  return score(buffer_, *ctx_, *cfg_);
}

WeightFit fit_weight(const FitContext& ctx, const FitConfig& cfg,
                     std::uint64_t crn_seed, double start_w) {
  if (!(start_w >= cfg.start_lo && start_w <= cfg.start_hi)) {
    throw Error(ErrorCode::Precondition,
                "start weight " + std::to_string(start_w) + " outside [" +
                    std::to_string(cfg.start_lo) + ", " +
                    std::to_string(cfg.start_hi) + "]");
  }
  const CrnObjective objective(ctx, cfg, crn_seed);
  const ScalarMinimum min = brent_minimize(
      [&](double w) {
        const double value = objective(w);
        if (!std::isfinite(value)) {
          throw Error(ErrorCode::NonFinite,
                      "likelihood is not finite at w = " + std::to_string(w));
        }
        return value;
      },
      cfg.weight_lo, cfg.weight_hi, start_w, cfg.optimizer_tol);
  return {min.x, -min.fx, min.evaluations};
}

double optimal_observer_loglik(const FitContext& ctx, const FitConfig& cfg,
                               std::uint64_t crn_seed) {
  const CrnObjective objective(ctx, cfg, crn_seed);
  return -objective(1.0);
}

double aic(int k, double loglik) noexcept {
  return 2.0 * static_cast<double>(k) - 2.0 * loglik;
}

Interval hdi(std::span<const double> values, double mass) {
  if (values.empty()) {
    throw Error(ErrorCode::EmptyValues, "HDI of an empty sample");
  }
  if (!(mass > 0.0 && mass <= 1.0)) {
    throw Error(ErrorCode::Precondition, "HDI mass must lie in (0,1]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  // the epsilon keeps products such as 0.95 * 100 from rounding up a window
  auto m = static_cast<std::size_t>(std::ceil(mass * static_cast<double>(n) - 1e-9));
  m = std::clamp<std::size_t>(m, 1, n);
  std::size_t best = 0;
  double best_width = sorted[m - 1] - sorted[0];
  for (std::size_t i = 1; i + m <= n; ++i) {
    const double width = sorted[i + m - 1] - sorted[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }
  return {sorted[best], sorted[best + m - 1]};
}

RepeatSeeds repeat_seeds(std::uint64_t base_seed, std::size_t repeat) noexcept {
  const std::uint64_t r = derive_seed(base_seed, repeat);
  return {r, derive_seed(r, 0), derive_seed(r, 1), derive_seed(r, 2),
          derive_seed(r, 3), derive_seed(r, 4)};
}

std::size_t default_worker_count() {
  if (const char* env = std::getenv("PULLFIT_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      return static_cast<std::size_t>(value);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void FitResult::summarize() {
  std::vector<double> w_line;
  std::vector<double> w_bar;
  std::vector<double> delta;
  n_positive_delta = 0;
  for (const auto& r : per_repeat) {
    if (line_fitted) w_line.push_back(r.w_line_hat);
    if (bar_fitted) w_bar.push_back(r.w_bar_hat);
    delta.push_back(r.delta_aic);
    if (r.delta_aic > 0.0) ++n_positive_delta;
  }
  const double mass = config.hdi_mass;
  const Interval none{kNaN, kNaN};
  mean_w_line = line_fitted ? stats::mean(w_line) : kNaN;
  mean_w_bar = bar_fitted ? stats::mean(w_bar) : kNaN;
  hdi_w_line = line_fitted && !w_line.empty() ? hdi(w_line, mass) : none;
  hdi_w_bar = bar_fitted && !w_bar.empty() ? hdi(w_bar, mass) : none;
  mean_delta_aic = delta.empty() ? kNaN : stats::mean(delta);
  hdi_delta_aic = delta.empty() ? none : hdi(delta, mass);
}

FitResult fit_repeats(std::span<const TrialRecord> trials, const FitConfig& cfg,
                      std::size_t workers) {
  cfg.validate();
  const std::optional<FitContext> line = make_fit_context(trials, SeriesKind::Line);
  const std::optional<FitContext> bar = make_fit_context(trials, SeriesKind::Bar);
  if (!line && !bar) {
    throw Error(ErrorCode::MissingCondition,
                "no compound observations for either target kind");
  }

  FitResult result;
  result.config = cfg;
  result.line_fitted = line.has_value();
  result.bar_fitted = bar.has_value();
  result.parameter_count = (line ? 1 : 0) + (bar ? 1 : 0);
  result.n_observations_line = line ? line->observations.size() : 0;
  result.n_observations_bar = bar ? bar->observations.size() : 0;
  if (!line) {
    result.warnings.push_back(
        "MissingCondition: no line-target compound observations; fitted the bar weight only (k=1)");
  }
  if (!bar) {
    result.warnings.push_back(
        "MissingCondition: no bar-target compound observations; fitted the line weight only (k=1)");
  }
  result.per_repeat.resize(cfg.repeats);
  const int k = result.parameter_count;

  const auto run_repeat = [&](std::size_t r) {
    const RepeatSeeds seeds = repeat_seeds(cfg.base_seed, r);
    Rng starts(seeds.starts);
    RepeatRecord rec;
    rec.repeat = r;
    rec.seed = seeds.repeat;
    rec.start_w_line = starts.uniform(cfg.start_lo, cfg.start_hi);
    rec.start_w_bar = starts.uniform(cfg.start_lo, cfg.start_hi);
    rec.w_line_hat = kNaN;
    rec.w_bar_hat = kNaN;
    double loglik_mix = 0.0;
    double loglik_opt = 0.0;
    if (line) {
      const WeightFit fit = fit_weight(*line, cfg, seeds.mixture_line, rec.start_w_line);
      rec.w_line_hat = fit.w_hat;
      loglik_mix += fit.loglik;
      loglik_opt += optimal_observer_loglik(*line, cfg, seeds.optimal_line);
    }
    if (bar) {
      const WeightFit fit = fit_weight(*bar, cfg, seeds.mixture_bar, rec.start_w_bar);
      rec.w_bar_hat = fit.w_hat;
      loglik_mix += fit.loglik;
      loglik_opt += optimal_observer_loglik(*bar, cfg, seeds.optimal_bar);
    }
    rec.loglik_mixture = loglik_mix;
    rec.loglik_optimal = loglik_opt;
    rec.aic_mixture = aic(k, loglik_mix);
    rec.aic_optimal = aic(0, loglik_opt);
    rec.delta_aic = 2.0 * k - 2.0 * (loglik_mix - loglik_opt);
    result.per_repeat[r] = rec;
  };

  const std::size_t n_workers =
      std::clamp<std::size_t>(workers == 0 ? default_worker_count() : workers, 1,
                              cfg.repeats);
  std::vector<std::exception_ptr> failures(cfg.repeats);
  if (n_workers == 1) {
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
      run_repeat(r);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < cfg.repeats; r = next++) {
          try {
            run_repeat(r);
          } catch (...) {
            failures[r] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  result.summarize();
  return result;
}

} // namespace pullfit
