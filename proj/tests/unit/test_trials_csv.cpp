#include <doctest.h>

#include <sstream>
#include <string>

#include "pullfit/error.hpp"
#include "pullfit/trials_csv.hpp"

using namespace pullfit;

namespace {

std::string with_header(const std::string& rows) {
  return std::string(kTrialsHeader) + "\n" + rows;
}

std::vector<TrialRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_trials(in);
}

// (code, line) of the RowError thrown while parsing
std::pair<ErrorCode, std::size_t> row_failure(const std::string& text) {
  try {
    parse(text);
  } catch (const RowError& e) {
    return {e.code(), e.line()};
  }
  return {ErrorCode::IoError, 0};  // line 0: nothing thrown
}

} // namespace

TEST_CASE("single row") {
  const auto trials = parse(with_header("0,single,line,top,105,,,100.51\n"));
  REQUIRE(trials.size() == 1);
  const auto& t = trials[0];
  CHECK(t.trial_id == 0);
  CHECK(t.condition == Condition::Single);
  CHECK(t.target_kind == SeriesKind::Line);
  CHECK(t.target_half == Half::Top);
  CHECK(t.true_target == 105.0);
  CHECK_FALSE(t.nontarget_kind.has_value());
  CHECK_FALSE(t.true_nontarget.has_value());
  CHECK(t.estimate == 100.51);
  CHECK(t.error() == doctest::Approx(-4.49));
}

TEST_CASE("compound row and CRLF") {
  const auto trials = parse(with_header("7,compound,bar,bottom,35,line,105,41.2\r\n\n"));
  REQUIRE(trials.size() == 1);
  CHECK(trials[0].nontarget_kind == SeriesKind::Line);
  CHECK(trials[0].true_nontarget == 105.0);
}

TEST_CASE("header problems are schema errors") {
  std::istringstream empty("");
  try {
    parse_trials(empty);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
  }
  std::istringstream wrong("id,condition\n");
  try {
    parse_trials(wrong);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
  }
}

TEST_CASE("row errors carry line numbers") {
  const std::string good = "0,single,line,top,105,,,100\n";
  CHECK(row_failure(with_header(good + "1,single,line,top,105,,100\n")) ==
        std::pair{ErrorCode::RowError, std::size_t{3}});
  CHECK(row_failure(with_header("x,single,line,top,105,,,100\n")).second == 2);
  CHECK(row_failure(with_header("0,double,line,top,105,,,100\n")).first == ErrorCode::RowError);
  CHECK(row_failure(with_header("0,single,pie,top,105,,,100\n")).first == ErrorCode::RowError);
  CHECK(row_failure(with_header("0,single,line,middle,105,,,100\n")).first == ErrorCode::RowError);
  CHECK(row_failure(with_header("0,single,line,top,abc,,,100\n")).first == ErrorCode::RowError);
  CHECK(row_failure(with_header("0,single,line,top,105,,,nan\n")).first == ErrorCode::RowError);
  CHECK(row_failure(with_header(good + good + "2,compound,line,top,105,,,100\n")) ==
        std::pair{ErrorCode::ConsistencyError, std::size_t{4}});
  CHECK(row_failure(with_header("0,single,line,top,105,bar,35,100\n")).first ==
        ErrorCode::ConsistencyError);
}

TEST_CASE("write then parse reproduces records and bytes") {
  const std::string text = with_header(
      "0,single,line,top,105,,,100.51\n"
      "1,single,bar,bottom,35,,,39.19\n"
      "2,compound,line,top,117,bar,40,110.123\n"
      "3,compound,bar,bottom,30,line,93,33.5\n");
  const auto trials = parse(text);
  std::ostringstream out;
  write_trials(out, trials);
  CHECK(out.str() == text);
  CHECK(parse(out.str()) == trials);
}

TEST_CASE("format_decimal") {
  CHECK(format_decimal(105.0) == "105");
  CHECK(format_decimal(100.51) == "100.51");
  CHECK(format_decimal(-4.4912345678) == "-4.49123");
}

TEST_CASE("missing file is an io error") {
  try {
    parse_trials_csv("/nonexistent/trials.csv");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}
