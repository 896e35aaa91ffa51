#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "pullfit/observer.hpp"
#include "pullfit/report.hpp"
#include "pullfit/svg.hpp"
#include "pullfit/synthesis.hpp"
#include "pullfit/trials_csv.hpp"

namespace pullfit::cli {

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SchemaError:
    case ErrorCode::RowError:
    case ErrorCode::ConsistencyError:
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::GridError:
    case ErrorCode::IoError:
    case ErrorCode::InvalidCounts:
    case ErrorCode::InvalidSpec:
      return kExitInput;
    default:
      return kExitFit;
  }
}

std::vector<double> parse_weight_grid(std::string_view spec) {
  const auto fail = [&](const std::string& what) -> void {
    throw Error(ErrorCode::GridError,
                "weight grid '" + std::string(spec) + "': " + what);
  };
  double parts[3];
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const auto colon = spec.find(':', start);
    if ((i < 2) == (colon == std::string_view::npos)) {
      fail("expected lo:hi:step");
    }
    const std::string item(spec.substr(start, colon == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : colon - start));
    char* end = nullptr;
    parts[i] = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() || !std::isfinite(parts[i])) {
      fail("'" + item + "' is not a number");
    }
    start = colon + 1;
  }
  const double lo = parts[0];
  const double hi = parts[1];
  const double step = parts[2];
  if (!(step > 0.0)) fail("step must be > 0");
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) fail("need 0 <= lo <= hi <= 1");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid.push_back(std::min(hi, lo + static_cast<double>(i) * step));
  }
  return grid;
}

std::vector<RecoveryRow> run_recovery(const RunConfig& config,
                                      const std::vector<double>& grid,
                                      std::uint64_t sim_seed, std::size_t workers) {
  std::vector<RecoveryRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ObserverParams params = config.observer;
    params.w_line_target = grid[i];
    params.w_bar_target = grid[i];
    const auto trials = simulate_dataset(config.design, params, config.counts,
                                         config.configuration, derive_seed(sim_seed, i));
    rows.push_back({grid[i], fit_repeats(trials, config.fit, workers)});
  }
  return rows;
}

namespace {

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

} // namespace

void write_recovery_csv(std::ostream& out, const std::vector<RecoveryRow>& rows) {
  out << kRecoveryHeader << '\n';
  for (const auto& r : rows) {
    const FitResult& f = r.fit;
    out << csv_number(r.true_w) << ',' << csv_number(f.mean_w_line) << ','
        << csv_number(f.mean_w_bar) << ',' << csv_number(f.mean_delta_aic) << ','
        << csv_number(f.hdi_w_line.lo) << ',' << csv_number(f.hdi_w_line.hi) << ','
        << csv_number(f.hdi_w_bar.lo) << ',' << csv_number(f.hdi_w_bar.hi) << ','
        << csv_number(f.hdi_delta_aic.lo) << ',' << csv_number(f.hdi_delta_aic.hi)
        << '\n';
  }
}

namespace {

bool is_stdout(const std::string& path) { return path.empty() || path == "-"; }

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (is_stdout(path)) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::IoError, "cannot write " + path);
  }
  file << content;
  if (!file) {
    throw Error(ErrorCode::IoError, "write failed for " + path);
  }
}

RunConfig load_config(const std::string& path) {
  return path.empty() ? RunConfig{} : parse_config_file(path);
}

struct SimulateArgs {
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> n_single_line;
  std::optional<std::int64_t> n_single_bar;
  std::optional<std::int64_t> n_line_target;
  std::optional<std::int64_t> n_bar_target;
  std::string configuration;
};

struct FitArgs {
  std::string config;
  std::string trials;
  std::string out;
  std::string format = "json";
  std::string table;
  std::string plots;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> repeats;
  std::optional<std::size_t> m_samples;
};

struct RecoverArgs {
  std::string config;
  std::string grid;
  std::string out;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> fit_seed;
  std::optional<std::size_t> repeats;
  std::optional<std::size_t> m_samples;
};

struct ReportArgs {
  std::string path;
  std::string format = "text";
  std::string out;
};

void apply_fit_overrides(FitConfig& fit, const std::optional<std::uint64_t>& seed,
                         const std::optional<std::size_t>& repeats,
                         const std::optional<std::size_t>& m_samples) {
  if (seed) fit.base_seed = *seed;
  if (repeats) fit.repeats = *repeats;
  if (m_samples) fit.m_samples = *m_samples;
  fit.validate();
}

void cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load_config(args.config);
  if (args.n_single_line) cfg.counts.n_single_line = *args.n_single_line;
  if (args.n_single_bar) cfg.counts.n_single_bar = *args.n_single_bar;
  if (args.n_line_target) cfg.counts.n_compound_line_target = *args.n_line_target;
  if (args.n_bar_target) cfg.counts.n_compound_bar_target = *args.n_bar_target;
  if (!args.configuration.empty()) {
    const auto parsed = parse_compound_config(args.configuration);
    if (!parsed) {
      throw Error(ErrorCode::ValidationError,
                  "unknown configuration '" + args.configuration + "'");
    }
    cfg.configuration = *parsed;
  }
  const auto trials = simulate_dataset(cfg.design, cfg.observer, cfg.counts,
                                       cfg.configuration, args.seed);
  std::ostringstream csv;
  write_trials(csv, trials);
  const std::string path = args.out.empty() ? cfg.io.out : args.out;
  emit(path, csv.str(), out);

  std::ostream& summary = is_stdout(path) ? err : out;
  for (auto condition : {Condition::Single, Condition::Compound}) {
    for (auto kind : {SeriesKind::Line, SeriesKind::Bar}) {
      const TrialFilter filter{condition, kind, std::nullopt};
      bool any = false;
      for (const auto& t : trials) any = any || filter.matches(t);
      if (!any) continue;
      const ErrorSummary s = summarize_errors(trials, filter);
      char buf[160];
      std::snprintf(buf, sizeof buf, "%-8s %-4s n=%zu mean_error=%.3f se=%.3f\n",
                    std::string(to_string(condition)).c_str(),
                    std::string(to_string(kind)).c_str(), s.n, s.mean_error, s.se);
      summary << buf;
    }
  }
}

std::string overlay_for(const FitContext& ctx, const FitConfig& cfg, double w,
                        std::uint64_t seed) {
  Rng rng(seed);
  const auto synthetic = synthesize_compound(ctx.target_dist, ctx.nontarget_dist,
                                             ctx.pairs, w, cfg.m_samples, rng);
  char title[128];
  std::snprintf(title, sizeof title, "%s target: observed vs model (w = %.3f)",
                std::string(to_string(ctx.target_kind)).c_str(), w);
  return svg::fit_overlay(ctx.observations, synthetic.values, title);
}

void cmd_fit(const FitArgs& args, std::ostream& out) {
  RunConfig cfg = load_config(args.config);
  apply_fit_overrides(cfg.fit, args.seed, args.repeats, args.m_samples);
  const std::string trials_path = args.trials.empty() ? cfg.io.trials : args.trials;
  if (trials_path.empty()) {
    throw Error(ErrorCode::ValidationError,
                "no trial file given (positional argument or io.trials)");
  }
  const auto trials = parse_trials_csv(trials_path);
  const FitResult result = fit_repeats(trials, cfg.fit);

  std::vector<double> deltas;
  for (const auto& r : result.per_repeat) deltas.push_back(r.delta_aic);

  std::string document;
  if (args.format == "json") {
    document = to_json(result).dump(2) + "\n";
  } else if (args.format == "csv") {
    std::ostringstream os;
    write_repeats_csv(os, result);
    document = os.str();
  } else {
    document = svg::delta_aic_histogram(deltas, "AIC difference over repeats");
  }
  const std::string path = args.out.empty() ? cfg.io.out : args.out;
  emit(path, document, out);

  if (!args.table.empty()) {
    std::ostringstream os;
    write_repeats_csv(os, result);
    emit(args.table, os.str(), out);
  }
  if (!args.plots.empty()) {
    emit(args.plots + "-aic.svg",
         svg::delta_aic_histogram(deltas, "AIC difference over repeats"), out);
    const RepeatSeeds seeds = repeat_seeds(cfg.fit.base_seed, 0);
    if (const auto line = make_fit_context(trials, SeriesKind::Line)) {
      emit(args.plots + "-fit-line.svg",
           overlay_for(*line, cfg.fit, result.mean_w_line, seeds.mixture_line), out);
    }
    if (const auto bar = make_fit_context(trials, SeriesKind::Bar)) {
      emit(args.plots + "-fit-bar.svg",
           overlay_for(*bar, cfg.fit, result.mean_w_bar, seeds.mixture_bar), out);
    }
  }
  if (!is_stdout(path)) {
    out << summary_text(result);
  }
}

void cmd_recover(const RecoverArgs& args, std::ostream& out) {
  RunConfig cfg = load_config(args.config);
  apply_fit_overrides(cfg.fit, args.fit_seed, args.repeats, args.m_samples);
  const auto grid = parse_weight_grid(args.grid);
  const auto rows = run_recovery(cfg, grid, args.seed);
  std::ostringstream os;
  write_recovery_csv(os, rows);
  emit(args.out.empty() ? cfg.io.out : args.out, os.str(), out);
}

void cmd_report(const ReportArgs& args, std::ostream& out) {
  std::ifstream in(args.path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + args.path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, args.path + ": " + e.what());
  }
  const FitResult result = fit_result_from_json(doc);
  std::string document;
  if (args.format == "text") {
    document = summary_text(result);
  } else if (args.format == "json") {
    document = to_json(result).dump(2) + "\n";
  } else if (args.format == "csv") {
    std::ostringstream os;
    write_repeats_csv(os, result);
    document = os.str();
  } else {
    std::vector<double> deltas;
    for (const auto& r : result.per_repeat) deltas.push_back(r.delta_aic);
    document = svg::delta_aic_histogram(deltas, "AIC difference over repeats");
  }
  emit(args.out, document, out);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perceptual-pull mixture model: simulate, fit and compare", "pullfit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate trial data from a synthetic observer");
  simulate->add_option("--config", sim.config, "Configuration file");
  simulate->add_option("--seed", sim.seed, "Simulation seed");
  simulate->add_option("--out", sim.out, "Trial CSV output (default stdout)");
  simulate->add_option("--n-single-line", sim.n_single_line, "Single-line trials");
  simulate->add_option("--n-single-bar", sim.n_single_bar, "Single-bar trials");
  simulate->add_option("--n-line-target", sim.n_line_target, "Compound line-target trials");
  simulate->add_option("--n-bar-target", sim.n_bar_target, "Compound bar-target trials");
  simulate->add_option("--configuration", sim.configuration,
                       "Compound layout: line-bar, bar-line, line-line, bar-bar");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit target weights and compare against the ideal observer");
  fit_cmd->add_option("trials", fit.trials, "Trial CSV (default io.trials)");
  fit_cmd->add_option("--config", fit.config, "Configuration file");
  fit_cmd->add_option("--seed", fit.seed, "Base seed (overrides fit.base_seed)");
  fit_cmd->add_option("--out", fit.out, "Report output (default stdout)");
  fit_cmd->add_option("--format", fit.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "svg"}));
  fit_cmd->add_option("--repeats", fit.repeats, "Optimization repeats");
  fit_cmd->add_option("--m-samples", fit.m_samples, "Synthetic samples per likelihood");
  fit_cmd->add_option("--table", fit.table, "Also write the per-repeat CSV here");
  fit_cmd->add_option("--plots", fit.plots, "Also write SVG plots with this path prefix");

  RecoverArgs rec;
  auto* recover = app.add_subcommand("recover", "Parameter-recovery sweep over true weights");
  recover->add_option("grid", rec.grid, "Weight grid lo:hi:step")->required();
  recover->add_option("--config", rec.config, "Configuration file");
  recover->add_option("--seed", rec.seed, "Simulation seed");
  recover->add_option("--fit-seed", rec.fit_seed, "Fit base seed (overrides fit.base_seed)");
  recover->add_option("--out", rec.out, "Recovery CSV output (default stdout)");
  recover->add_option("--repeats", rec.repeats, "Optimization repeats");
  recover->add_option("--m-samples", rec.m_samples, "Synthetic samples per likelihood");

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "Render a saved fit report");
  report->add_option("report", rep.path, "JSON report written by fit")->required();
  report->add_option("--format", rep.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv", "svg"}));
  report->add_option("--out", rep.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "pullfit: error: Usage: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      cmd_simulate(sim, out, err);
    } else if (fit_cmd->parsed()) {
      cmd_fit(fit, out);
    } else if (recover->parsed()) {
      cmd_recover(rec, out);
    } else if (report->parsed()) {
      cmd_report(rep, out);
    }
  } catch (const Error& e) {
    err << "pullfit: error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "pullfit: error: Internal: " << e.what() << '\n';
    return kExitFit;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("pullfit");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace pullfit::cli
