#include "pullfit/trials_csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "pullfit/error.hpp"

namespace pullfit {

namespace {

constexpr std::size_t kFieldCount = 8;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
}

class RowParser {
public:
  explicit RowParser(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw RowError(ErrorCode::RowError, line_, what);
  }

  std::int64_t integer(std::string_view text, const char* name) const {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
      fail(std::string("bad integer in ") + name + ": '" + std::string(text) + "'");
    }
    return value;
  }

  double decimal(std::string_view text, const char* name) const {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
        !std::isfinite(value)) {
      fail(std::string("bad decimal in ") + name + ": '" + std::string(text) + "'");
    }
    return value;
  }

  SeriesKind kind(std::string_view text, const char* name) const {
    if (text == "line") return SeriesKind::Line;
    if (text == "bar") return SeriesKind::Bar;
    fail(std::string(name) + " must be line or bar, got '" + std::string(text) + "'");
  }

  Half half(std::string_view text) const {
    if (text == "top") return Half::Top;
    if (text == "bottom") return Half::Bottom;
    fail("target_half must be top or bottom, got '" + std::string(text) + "'");
  }

  Condition condition(std::string_view text) const {
    if (text == "single") return Condition::Single;
    if (text == "compound") return Condition::Compound;
    fail("condition must be single or compound, got '" + std::string(text) + "'");
  }

private:
  std::size_t line_;
};

} // namespace

std::string format_decimal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::vector<TrialRecord> parse_trials(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::SchemaError, "empty trial file; expected header");
  }
  strip_cr(line);
  if (line != kTrialsHeader) {
    throw Error(ErrorCode::SchemaError, "bad header: expected '" +
                                            std::string(kTrialsHeader) + "'");
  }

  std::vector<TrialRecord> trials;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) {
      continue;
    }
    const RowParser row(line_no);
    const auto f = split(line);
    if (f.size() != kFieldCount) {
      row.fail("expected 8 fields, found " + std::to_string(f.size()));
    }
    TrialRecord t;
    t.trial_id = row.integer(f[0], "trial_id");
    t.condition = row.condition(f[1]);
    t.target_kind = row.kind(f[2], "target_kind");
    t.target_half = row.half(f[3]);
    t.true_target = row.decimal(f[4], "true_target");
    const bool has_kind = !f[5].empty();
    const bool has_true = !f[6].empty();
    if (has_kind) t.nontarget_kind = row.kind(f[5], "nontarget_kind");
    if (has_true) t.true_nontarget = row.decimal(f[6], "true_nontarget");
    t.estimate = row.decimal(f[7], "estimate");

    if (t.condition == Condition::Compound && !(has_kind && has_true)) {
      throw RowError(ErrorCode::ConsistencyError, line_no,
                     "compound row needs nontarget_kind and true_nontarget");
    }
    if (t.condition == Condition::Single && (has_kind || has_true)) {
      throw RowError(ErrorCode::ConsistencyError, line_no,
                     "single row must leave the nontarget fields empty");
    }
    trials.push_back(t);
  }
  return trials;
}

std::vector<TrialRecord> parse_trials_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  return parse_trials(in);
}

void write_trials(std::ostream& out, std::span<const TrialRecord> trials) {
  out << kTrialsHeader << '\n';
  for (const auto& t : trials) {
    out << t.trial_id << ',' << to_string(t.condition) << ','
        << to_string(t.target_kind) << ',' << to_string(t.target_half) << ','
        << format_decimal(t.true_target) << ',';
    if (t.nontarget_kind) out << to_string(*t.nontarget_kind);
    out << ',';
    if (t.true_nontarget) out << format_decimal(*t.true_nontarget);
    out << ',' << format_decimal(t.estimate) << '\n';
  }
}

void write_trials_csv(const std::filesystem::path& path,
                      std::span<const TrialRecord> trials) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  write_trials(out, trials);
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed for " + path.string());
  }
}

} // namespace pullfit
