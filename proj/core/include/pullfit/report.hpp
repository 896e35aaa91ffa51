#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "pullfit/estimation.hpp"

namespace pullfit {

/// Structured report with every FitResult field. NaN weights of kinds that
/// were not fitted are written as null.
nlohmann::json to_json(const FitResult& result);
FitResult fit_result_from_json(const nlohmann::json& doc);

/// Flat per-repeat table.
inline constexpr const char* kRepeatsHeader =
    "repeat,seed,start_w_line,start_w_bar,w_line_hat,w_bar_hat,"
    "loglik_mixture,loglik_optimal,aic_mixture,aic_optimal,delta_aic";
void write_repeats_csv(std::ostream& out, const FitResult& result);

/// Short human-readable summary.
std::string summary_text(const FitResult& result);

} // namespace pullfit
