#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pullfit/observer.hpp"

namespace pullfit {

inline constexpr std::string_view kTrialsHeader =
    "trial_id,condition,target_kind,target_half,true_target,nontarget_kind,"
    "true_nontarget,estimate";

/// Six significant digits, shortest %g form.
std::string format_decimal(double value);

/// Throws SchemaError on a bad header, RowError (code RowError or
/// ConsistencyError) carrying the 1-based line number on a bad row.
std::vector<TrialRecord> parse_trials(std::istream& in);
std::vector<TrialRecord> parse_trials_csv(const std::filesystem::path& path);

void write_trials(std::ostream& out, std::span<const TrialRecord> trials);
void write_trials_csv(const std::filesystem::path& path,
                      std::span<const TrialRecord> trials);

} // namespace pullfit
