#include "pullfit/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <string_view>

#include "pullfit/error.hpp"

namespace pullfit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct LineContext {
  std::size_t line;
  std::string key;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": " + key + ": " + what);
  }

  double real(std::string_view text) const {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
        !std::isfinite(v)) {
      fail("expected a number, got '" + std::string(text) + "'");
    }
    return v;
  }

  std::uint64_t unsigned_int(std::string_view text) const {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
      fail("expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return v;
  }

  std::int64_t count(std::string_view text) const {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
      fail("expected an integer, got '" + std::string(text) + "'");
    }
    return v;
  }

  MeanTriple triple(std::string_view text) const {
    MeanTriple out{};
    std::size_t i = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      const auto item = trim(text.substr(start, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - start));
      if (i >= out.size()) {
        fail("expected exactly three comma-separated means");
      }
      out[i++] = real(item);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (i != out.size()) {
      fail("expected exactly three comma-separated means");
    }
    return out;
  }
};

using Setter = std::function<void(RunConfig&, MeanTriple*, const LineContext&,
                                  std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    const auto real = [&t](const char* key, auto member) {
      t[key] = [member](RunConfig& c, MeanTriple*, const LineContext& ctx,
                        std::string_view v) { member(c) = ctx.real(v); };
    };
    const auto size = [&t](const char* key, auto member) {
      t[key] = [member](RunConfig& c, MeanTriple*, const LineContext& ctx,
                        std::string_view v) {
        member(c) = static_cast<std::size_t>(ctx.unsigned_int(v));
      };
    };
    const auto count = [&t](const char* key, auto member) {
      t[key] = [member](RunConfig& c, MeanTriple*, const LineContext& ctx,
                        std::string_view v) { member(c) = ctx.count(v); };
    };
    const auto design = [&t](const char* key, std::size_t slot) {
      t[key] = [slot](RunConfig&, MeanTriple* triples, const LineContext& ctx,
                      std::string_view v) { triples[slot] = ctx.triple(v); };
    };

    size("fit.m_samples", [](RunConfig& c) -> auto& { return c.fit.m_samples; });
    size("fit.repeats", [](RunConfig& c) -> auto& { return c.fit.repeats; });
    real("fit.start_lo", [](RunConfig& c) -> auto& { return c.fit.start_lo; });
    real("fit.start_hi", [](RunConfig& c) -> auto& { return c.fit.start_hi; });
    real("fit.weight_lo", [](RunConfig& c) -> auto& { return c.fit.weight_lo; });
    real("fit.weight_hi", [](RunConfig& c) -> auto& { return c.fit.weight_hi; });
    size("fit.grid_size", [](RunConfig& c) -> auto& { return c.fit.grid_size; });
    real("fit.density_floor", [](RunConfig& c) -> auto& { return c.fit.density_floor; });
    real("fit.optimizer_tol", [](RunConfig& c) -> auto& { return c.fit.optimizer_tol; });
    t["fit.base_seed"] = [](RunConfig& c, MeanTriple*, const LineContext& ctx,
                            std::string_view v) { c.fit.base_seed = ctx.unsigned_int(v); };
    real("fit.hdi_mass", [](RunConfig& c) -> auto& { return c.fit.hdi_mass; });
    real("fit.degenerate_bandwidth",
         [](RunConfig& c) -> auto& { return c.fit.degenerate_bandwidth; });

    real("observer.bias_line", [](RunConfig& c) -> auto& { return c.observer.bias_line; });
    real("observer.sigma_line", [](RunConfig& c) -> auto& { return c.observer.sigma_line; });
    real("observer.bias_bar", [](RunConfig& c) -> auto& { return c.observer.bias_bar; });
    real("observer.sigma_bar", [](RunConfig& c) -> auto& { return c.observer.sigma_bar; });
    real("observer.w_line_target",
         [](RunConfig& c) -> auto& { return c.observer.w_line_target; });
    real("observer.w_bar_target",
         [](RunConfig& c) -> auto& { return c.observer.w_bar_target; });

    design("design.line_top", 0);
    design("design.line_bottom", 1);
    design("design.bar_top", 2);
    design("design.bar_bottom", 3);
    real("design.point_noise_sd", [](RunConfig& c) -> auto& { return c.point_noise_sd; });
    size("design.n_points", [](RunConfig& c) -> auto& { return c.n_points; });

    count("simulate.n_single_line",
          [](RunConfig& c) -> auto& { return c.counts.n_single_line; });
    count("simulate.n_single_bar",
          [](RunConfig& c) -> auto& { return c.counts.n_single_bar; });
    count("simulate.n_compound_line_target",
          [](RunConfig& c) -> auto& { return c.counts.n_compound_line_target; });
    count("simulate.n_compound_bar_target",
          [](RunConfig& c) -> auto& { return c.counts.n_compound_bar_target; });
    t["simulate.configuration"] = [](RunConfig& c, MeanTriple*, const LineContext& ctx,
                                     std::string_view v) {
      const auto parsed = parse_compound_config(v);
      if (!parsed) {
        ctx.fail("expected line-bar, bar-line, line-line or bar-bar");
      }
      c.configuration = *parsed;
    };

    t["io.trials"] = [](RunConfig& c, MeanTriple*, const LineContext&,
                        std::string_view v) { c.io.trials = std::string(v); };
    t["io.out"] = [](RunConfig& c, MeanTriple*, const LineContext&,
                     std::string_view v) { c.io.out = std::string(v); };
    return t;
  }();
  return table;
}

} // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig config;
  MeanTriple triples[4] = {config.design.line_top(), config.design.line_bottom(),
                           config.design.bar_top(), config.design.bar_bottom()};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected 'section.key = value'");
    }
    const LineContext ctx{line_no, std::string(trim(line.substr(0, eq)))};
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters().find(ctx.key);
    if (it == setters().end()) {
      ctx.fail("unknown key");
    }
    it->second(config, triples, ctx, value);
  }

  config.design = DesignMeans(triples[0], triples[1], triples[2], triples[3]);
  config.fit.validate();
  config.observer.validate();
  if (config.counts.n_single_line < 0 || config.counts.n_single_bar < 0 ||
      config.counts.n_compound_line_target < 0 ||
      config.counts.n_compound_bar_target < 0) {
    throw Error(ErrorCode::ValidationError, "simulate counts must be >= 0");
  }
  if (!(config.point_noise_sd >= 0.0)) {
    throw Error(ErrorCode::ValidationError, "design.point_noise_sd must be >= 0");
  }
  if (config.n_points == 0) {
    throw Error(ErrorCode::ValidationError, "design.n_points must be >= 1");
  }
  return config;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  return parse_config(in);
}

} // namespace pullfit
