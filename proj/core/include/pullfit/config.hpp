#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "pullfit/estimation.hpp"
#include "pullfit/observer.hpp"
#include "pullfit/stimulus.hpp"

namespace pullfit {

struct IoPaths {
  std::string trials;
  std::string out;
};

struct RunConfig {
  FitConfig fit;
  ObserverParams observer;
  DesignMeans design = default_design();
  SimulationCounts counts;
  CompoundConfig configuration = CompoundConfig::LineBar;
  double point_noise_sd = 4.0;
  std::size_t n_points = 48;
  IoPaths io;
};

/// Line-oriented `section.key = value` format. `#` starts a comment, blank
/// lines are ignored, lists are comma-separated. Every key is optional.
/// Unknown keys and malformed lines raise ParseError with the line number;
/// invariant violations raise ValidationError.
///
///   fit.m_samples = 10000        observer.bias_line = -4.49
///   fit.repeats = 50             observer.sigma_line = 6.5
///   fit.start_lo = 0.9           observer.bias_bar = 4.19
///   fit.start_hi = 1.0           observer.sigma_bar = 5.1
///   fit.weight_lo = 0.0          observer.w_line_target = 0.945
///   fit.weight_hi = 1.0          observer.w_bar_target = 0.971
///   fit.grid_size = 512          design.line_top = 93,105,117
///   fit.density_floor = 1e-12    design.line_bottom = 23,35,47
///   fit.optimizer_tol = 1e-4     design.bar_top = 100,105,110
///   fit.base_seed = 42           design.bar_bottom = 30,35,40
///   fit.hdi_mass = 0.95          design.point_noise_sd = 4
///   fit.degenerate_bandwidth = 1 design.n_points = 48
///   simulate.n_single_line = 1728
///   simulate.n_single_bar = 1728
///   simulate.n_compound_line_target = 773
///   simulate.n_compound_bar_target = 779
///   simulate.configuration = line-bar
///   io.trials = trials.csv
///   io.out = report.json
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::filesystem::path& path);

} // namespace pullfit
