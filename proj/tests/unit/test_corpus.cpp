#include <doctest.h>

#include <sstream>

#include "emonet/corpus.hpp"
#include "emonet/diagnostics.hpp"
#include "emonet/error.hpp"
#include "emonet/windows.hpp"

using namespace emonet;
using std::chrono::days;
using std::chrono::hours;

TEST_CASE("timestamps parse with and without offsets") {
  CHECK(format_timestamp(parse_timestamp("2021-02-03")) == "2021-02-03T00:00:00Z");
  CHECK(format_timestamp(parse_timestamp("2021-02-03T04:05")) == "2021-02-03T04:05:00Z");
  CHECK(format_timestamp(parse_timestamp("2021-02-03 04:05:06.789Z")) == "2021-02-03T04:05:06Z");
  CHECK(format_timestamp(parse_timestamp("2021-02-03T09:00:00+09:00")) == "2021-02-03T00:00:00Z");
  CHECK(format_timestamp(parse_timestamp("2021-02-03T00:00:00-0530")) == "2021-02-03T05:30:00Z");
  CHECK_THROWS_AS(parse_timestamp("2021-13-01"), DataError);
  CHECK_THROWS_AS(parse_timestamp("yesterday"), DataError);
}

TEST_CASE("ingest counts malformed lines and keeps the last duplicate") {
  std::istringstream in(
      R"({"id": "a", "created_at": "2021-01-01T00:00:00Z", "text": "one"})" "\n"
      "not json\n"
      "\n"
      R"({"id": "b", "created_at": "2021-01-01T01:00:00Z"})" "\n"
      R"({"id": "a", "created_at": "2021-01-01T02:00:00Z", "text": "two"})" "\n");
  ScopedWarningCapture warnings;
  const auto r = ingest(in);
  CHECK(r.malformed == 2);
  CHECK(r.duplicates == 1);
  REQUIRE(r.posts.size() == 1);
  CHECK(r.posts[0].text == "two");
  CHECK(warnings.contains("a"));
}

TEST_CASE("strict ingest fails on the first malformed line") {
  std::istringstream in("{}\n");
  try {
    ingest(in, {true});
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("keyword filters use include-any and exclude-any") {
  const std::vector<Post> posts = {{"1", {}, "vaccine shot today"},
                                   {"2", {}, "vaccine conspiracy"},
                                   {"3", {}, "nothing here"}};
  const std::vector<std::string> include = {"vaccine"}, exclude = {"conspiracy"};
  const auto kept = filter_keywords(posts, include, exclude);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].id == "1");
  CHECK(filter_keywords(posts, {}, {}).size() == 3);
}

TEST_CASE("window schemes partition the period") {
  const Interval period{parse_timestamp("2020-01-01"), parse_timestamp("2020-01-15")};
  const auto weekly = WindowSpec::weekly(period);
  REQUIRE(weekly.windows().size() == 2);
  CHECK(weekly.windows()[0].id == "w01");
  CHECK(weekly.windows()[1].span.end == period.end);

  const auto daily = WindowSpec::daily(period);
  CHECK(daily.windows().size() == 14);

  const auto split = WindowSpec::daily_split({period.start, period.start + days{3}},
                                             period.start + hours{15});
  REQUIRE(split.windows().size() == 4);
  CHECK(split.windows()[0].span.end == period.start + hours{15});
  CHECK(split.windows()[1].span.end == period.start + days{1});
  CHECK_THROWS_AS(WindowSpec::daily_split(period, period.start + days{2}), ConfigError);

  const auto quarterly = WindowSpec::quarterly(
      {parse_timestamp("2020-12-31T15:00:00Z"), parse_timestamp("2021-06-30T15:00:00Z")}, 1,
      std::chrono::hours{9});
  REQUIRE(quarterly.windows().size() == 2);
  CHECK(format_timestamp(quarterly.windows()[1].span.start) == "2021-03-31T15:00:00Z");

  CHECK_THROWS_AS(WindowSpec::explicit_intervals(period, {{period.start, period.start + days{2}},
                                                          {period.start + days{3}, period.end}}),
                  ConfigError);
  CHECK(weekly.describe() != daily.describe());
}

TEST_CASE("posts are assigned to the window containing them") {
  const Interval period{parse_timestamp("2020-01-01"), parse_timestamp("2020-01-03")};
  std::vector<Post> posts = {{"b", parse_timestamp("2020-01-02T00:00:00Z"), "x"},
                             {"a", parse_timestamp("2020-01-01T23:59:59Z"), "y"},
                             {"c", parse_timestamp("2020-01-03T00:00:00Z"), "z"},
                             {"d", parse_timestamp("2020-01-01T00:00:00Z"), "w"}};
  const auto wc = assign_windows(posts, WindowSpec::daily(period));
  CHECK(wc.dropped == 1);
  REQUIRE(wc.windows.size() == 2);
  REQUIRE(wc.windows[0].posts.size() == 2);
  CHECK(wc.windows[0].posts[0].id == "a");
  CHECK(wc.windows[0].posts[1].id == "d");
  CHECK(wc.windows[1].posts.size() == 1);
}
