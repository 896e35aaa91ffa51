#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pullfit/config.hpp"
#include "pullfit/error.hpp"
#include "pullfit/estimation.hpp"

namespace pullfit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInput = 3,
  kExitFit = 4,
};

/// Parse/validation failures map to 3, everything else raised while fitting
/// maps to 4.
int exit_code_for(ErrorCode code) noexcept;

/// `lo:hi:step` with 0 <= lo <= hi <= 1 and step > 0; the end point is
/// included when it falls on the grid. Throws GridError.
std::vector<double> parse_weight_grid(std::string_view spec);

struct RecoveryRow {
  double true_w = 0.0;
  FitResult fit;
};

/// For every grid weight (applied to both target kinds) simulate a dataset
/// with seed derive_seed(sim_seed, i) and fit it with the configured protocol.
std::vector<RecoveryRow> run_recovery(const RunConfig& config,
                                      const std::vector<double>& grid,
                                      std::uint64_t sim_seed,
                                      std::size_t workers = 0);

inline constexpr const char* kRecoveryHeader =
    "true_w,mean_w_line_hat,mean_w_bar_hat,mean_delta_aic,hdi_w_line_lo,"
    "hdi_w_line_hi,hdi_w_bar_lo,hdi_w_bar_hi,hdi_delta_aic_lo,hdi_delta_aic_hi";
void write_recovery_csv(std::ostream& out, const std::vector<RecoveryRow>& rows);

/// Entry point shared by the executable and the tests. Diagnostics go to
/// `err` as a single line starting with "pullfit: error:".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pullfit::cli
