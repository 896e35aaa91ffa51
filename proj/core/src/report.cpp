#include "pullfit/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "pullfit/error.hpp"

namespace pullfit {

namespace {

using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json interval(const Interval& i) { return json::array({number(i.lo), number(i.hi)}); }

Interval interval_from(const json& j) {
  return {number_from(j.at(0)), number_from(j.at(1))};
}

std::string table_number(double v) {
  if (!std::isfinite(v)) {
    return "NA";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

} // namespace

json to_json(const FitResult& result) {
  const FitConfig& c = result.config;
  json doc;
  doc["config"] = {
      {"m_samples", c.m_samples},         {"repeats", c.repeats},
      {"start_lo", c.start_lo},           {"start_hi", c.start_hi},
      {"weight_lo", c.weight_lo},         {"weight_hi", c.weight_hi},
      {"grid_size", c.grid_size},         {"density_floor", c.density_floor},
      {"optimizer_tol", c.optimizer_tol}, {"base_seed", c.base_seed},
      {"hdi_mass", c.hdi_mass},           {"degenerate_bandwidth", c.degenerate_bandwidth},
  };
  doc["line_fitted"] = result.line_fitted;
  doc["bar_fitted"] = result.bar_fitted;
  doc["parameter_count"] = result.parameter_count;
  doc["n_observations_line"] = result.n_observations_line;
  doc["n_observations_bar"] = result.n_observations_bar;
  doc["warnings"] = result.warnings;
  doc["mean_w_line"] = number(result.mean_w_line);
  doc["mean_w_bar"] = number(result.mean_w_bar);
  doc["hdi_w_line"] = interval(result.hdi_w_line);
  doc["hdi_w_bar"] = interval(result.hdi_w_bar);
  doc["mean_delta_aic"] = number(result.mean_delta_aic);
  doc["hdi_delta_aic"] = interval(result.hdi_delta_aic);
  doc["n_positive_delta"] = result.n_positive_delta;

  json rows = json::array();
  for (const auto& r : result.per_repeat) {
    rows.push_back({
        {"repeat", r.repeat},
        {"seed", r.seed},
        {"start_w_line", number(r.start_w_line)},
        {"start_w_bar", number(r.start_w_bar)},
        {"w_line_hat", number(r.w_line_hat)},
        {"w_bar_hat", number(r.w_bar_hat)},
        {"loglik_mixture", number(r.loglik_mixture)},
        {"loglik_optimal", number(r.loglik_optimal)},
        {"aic_mixture", number(r.aic_mixture)},
        {"aic_optimal", number(r.aic_optimal)},
        {"delta_aic", number(r.delta_aic)},
    });
  }
  doc["per_repeat"] = std::move(rows);
  return doc;
}

FitResult fit_result_from_json(const json& doc) {
  try {
    FitResult result;
    const json& c = doc.at("config");
    FitConfig& cfg = result.config;
    cfg.m_samples = c.at("m_samples").get<std::size_t>();
    cfg.repeats = c.at("repeats").get<std::size_t>();
    cfg.start_lo = c.at("start_lo").get<double>();
    cfg.start_hi = c.at("start_hi").get<double>();
    cfg.weight_lo = c.at("weight_lo").get<double>();
    cfg.weight_hi = c.at("weight_hi").get<double>();
    cfg.grid_size = c.at("grid_size").get<std::size_t>();
    cfg.density_floor = c.at("density_floor").get<double>();
    cfg.optimizer_tol = c.at("optimizer_tol").get<double>();
    cfg.base_seed = c.at("base_seed").get<std::uint64_t>();
    cfg.hdi_mass = c.at("hdi_mass").get<double>();
    cfg.degenerate_bandwidth = c.at("degenerate_bandwidth").get<double>();

    result.line_fitted = doc.at("line_fitted").get<bool>();
    result.bar_fitted = doc.at("bar_fitted").get<bool>();
    result.parameter_count = doc.at("parameter_count").get<int>();
    result.n_observations_line = doc.at("n_observations_line").get<std::size_t>();
    result.n_observations_bar = doc.at("n_observations_bar").get<std::size_t>();
    result.warnings = doc.at("warnings").get<std::vector<std::string>>();
    result.mean_w_line = number_from(doc.at("mean_w_line"));
    result.mean_w_bar = number_from(doc.at("mean_w_bar"));
    result.hdi_w_line = interval_from(doc.at("hdi_w_line"));
    result.hdi_w_bar = interval_from(doc.at("hdi_w_bar"));
    result.mean_delta_aic = number_from(doc.at("mean_delta_aic"));
    result.hdi_delta_aic = interval_from(doc.at("hdi_delta_aic"));
    result.n_positive_delta = doc.at("n_positive_delta").get<std::size_t>();
    for (const json& row : doc.at("per_repeat")) {
      RepeatRecord r;
      r.repeat = row.at("repeat").get<std::size_t>();
      r.seed = row.at("seed").get<std::uint64_t>();
      r.start_w_line = number_from(row.at("start_w_line"));
      r.start_w_bar = number_from(row.at("start_w_bar"));
      r.w_line_hat = number_from(row.at("w_line_hat"));
      r.w_bar_hat = number_from(row.at("w_bar_hat"));
      r.loglik_mixture = number_from(row.at("loglik_mixture"));
      r.loglik_optimal = number_from(row.at("loglik_optimal"));
      r.aic_mixture = number_from(row.at("aic_mixture"));
      r.aic_optimal = number_from(row.at("aic_optimal"));
      r.delta_aic = number_from(row.at("delta_aic"));
      result.per_repeat.push_back(r);
    }
    return result;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed fit report: ") + e.what());
  }
}

void write_repeats_csv(std::ostream& out, const FitResult& result) {
  out << kRepeatsHeader << '\n';
  for (const auto& r : result.per_repeat) {
    out << r.repeat << ',' << r.seed << ',' << table_number(r.start_w_line) << ','
        << table_number(r.start_w_bar) << ',' << table_number(r.w_line_hat) << ','
        << table_number(r.w_bar_hat) << ',' << table_number(r.loglik_mixture) << ','
        << table_number(r.loglik_optimal) << ',' << table_number(r.aic_mixture) << ','
        << table_number(r.aic_optimal) << ',' << table_number(r.delta_aic) << '\n';
  }
}

std::string summary_text(const FitResult& result) {
  std::ostringstream os;
  const auto pct = static_cast<int>(std::lround(result.config.hdi_mass * 100.0));
  const auto line = [&](const char* label, double mean, const Interval& hdi) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.3f (%d%% HDI [%.3f, %.3f])\n", label, mean,
                  pct, hdi.lo, hdi.hi);
    os << buf;
  };
  os << "repeats: " << result.per_repeat.size()
     << ", free parameters: " << result.parameter_count << '\n';
  if (result.line_fitted) {
    line("mean weight, line target:", result.mean_w_line, result.hdi_w_line);
  }
  if (result.bar_fitted) {
    line("mean weight, bar target: ", result.mean_w_bar, result.hdi_w_bar);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "average AIC difference (mixture - optimal): %.1f (%d%% HDI [%.1f, %.1f])\n",
                result.mean_delta_aic, pct, result.hdi_delta_aic.lo,
                result.hdi_delta_aic.hi);
  os << buf;
  os << "repeats with positive AIC difference: " << result.n_positive_delta << " of "
     << result.per_repeat.size() << '\n';
  for (const auto& w : result.warnings) {
    os << "warning: " << w << '\n';
  }
  return os.str();
}

} // namespace pullfit
