#include "adl/config.hpp"
#include "adl/csv.hpp"
#include "adl/error.hpp"
#include "adl/timeutil.hpp"
#include "doctest.h"

using namespace adl;

TEST_CASE("empty config gives documented defaults") {
  const auto c = parse_config("");
  CHECK(c.lambda == 0.5);
  CHECK(c.history_window == 5);
  CHECK(c.epsilon == 0.05);
  CHECK(c.bucket_width == 30);
  CHECK(c.k == 3);
  CHECK(c.alpha == 1.0);
  CHECK(c.train_fraction == 0.7);
  CHECK(c.split == SplitKind::chronological);
  CHECK(c.on_watts == 10.0);
  CHECK(c.gap_tolerance == 2);
  CHECK(parse_config("{}").k == 3);
}

TEST_CASE("out-of-range values name their key") {
  try {
    parse_config(R"({"train_fraction": 1.5})");
    FAIL("expected RangeError");
  } catch (const RangeError& e) {
    CHECK(e.key() == "train_fraction");
  }
  for (const auto& [key, value] : std::vector<std::pair<std::string, std::string>>{
           {"lambda", "1.5"}, {"bucket_width", "7"}, {"k", "0"}, {"alpha", "0"}, {"on_watts", "-1"},
           {"split", "sideways"}, {"history_window", "0"}, {"seed", "-4"}, {"epsilon", "abc"}}) {
    RunConfig c;
    try {
      apply_override(c, key, value);
      validate_config(c);
      FAIL("expected RangeError for " << key);
    } catch (const RangeError& e) {
      CHECK(e.key() == key);
    }
  }
  RunConfig c;
  CHECK_THROWS_AS(apply_override(c, "colour", "blue"), RangeError);
}

TEST_CASE("overrides replace config values") {
  auto c = parse_config(R"({"on_watts": 25})");
  CHECK(c.on_watts == 25.0);
  apply_override(c, "on_watts", "40");
  CHECK(c.on_watts == 40.0);
  apply_override(c, "split", "random");
  CHECK(c.split == SplitKind::random);
  apply_override(c, "seed", "18446744073709551615");
  CHECK(c.seed == 18446744073709551615ull);
}

TEST_CASE("paths resolve against the config directory") {
  const auto c = parse_config(R"({"definitions": "../definitions/adl.json",
    "datasets": [{"kind": "adl-log", "path": "data.csv"},
                 {"kind": "power-trace", "path": "/abs/x.dat", "channel": "kettle"}]})",
                              "/srv/run/configs");
  CHECK(c.definitions == "/srv/run/definitions/adl.json");
  REQUIRE(c.datasets.size() == 2);
  CHECK(c.datasets[0].path == "/srv/run/configs/data.csv");
  CHECK(c.datasets[1].path == "/abs/x.dat");
  CHECK(c.datasets[1].channel == "kettle");
}

TEST_CASE("malformed configs") {
  CHECK_THROWS_AS(parse_config("{oops"), ParseError);
  CHECK_THROWS_AS(parse_config("[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"datasets": [{"kind": "video", "path": "x"}]})"), RangeError);
  CHECK_THROWS_AS(parse_config(R"({"datasets": [{"kind": "power-trace", "path": "x"}]})"), RangeError);
}

TEST_CASE("iso timestamps") {
  CHECK(parse_iso8601("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_iso8601("2011-11-28 02:27:59") == 1322447279);
  CHECK(parse_iso8601("2011-11-28T02:27:59.750Z") == 1322447279);
  CHECK(parse_iso8601("2012-02-29T12:00:00Z").has_value());
  CHECK_FALSE(parse_iso8601("2011-02-29T12:00:00Z").has_value());
  CHECK_FALSE(parse_iso8601("2011-11-28T25:00:00Z").has_value());
  CHECK_FALSE(parse_iso8601("28/11/2011").has_value());
  CHECK(format_iso8601(1322447279) == "2011-11-28T02:27:59Z");
  CHECK(minute_of_day(1322447279) == 147);
  CHECK(day_kind(1322447279) == DayKind::weekday);             // Monday
  CHECK(day_kind(1322447279 + 5 * 86400) == DayKind::weekend);  // Saturday
  CHECK(day_number(-1) == -1);
}

TEST_CASE("csv helpers") {
  CHECK(csv::split("a,,b") == std::vector<std::string>{"a", "", "b"});
  CHECK(csv::trim("  x \t") == "x");
  CHECK(csv::join_ids({3, 1, 2}) == "1;2;3");
  CHECK(csv::parse_ids("1;2; 5") == IdSet{1, 2, 5});
  CHECK(csv::parse_ids("").empty());
  CHECK_THROWS(csv::parse_ids("1;x"));
  CHECK(csv::parse_double(csv::format_double(0.1 + 0.2)) == 0.1 + 0.2);
  CHECK(csv::format_double(0.5) == "0.5");
}
