#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "malle/error.hpp"
#include "malle/group_db.hpp"
#include "test_support.hpp"

using namespace malle;

namespace {

/// (code, line) of the error raised while parsing `text`.
std::pair<ErrorCode, std::optional<int>> parse_failure(const std::string& text) {
  try {
    parse_group_db(text);
  } catch (const Error& e) {
    return {e.code(), e.line()};
  }
  FAIL("parsed without error: " << text);
  return {};
}

}  // namespace

TEST_CASE("parse a record") {
  const auto db = parse_group_db(
      "# comment\n"
      "group 5T2 D5\n"
      "degree 5\n"
      "gen (1,2,3,4,5)   # rotation\n"
      "gen (1,4)(2,3)\n"
      "ref result 3/4\n"
      "end\n");
  REQUIRE(db.records.size() == 1);
  const GroupRecord& r = db.records[0];
  CHECK(r.label == "5T2");
  CHECK(r.display_name == "D5");
  CHECK(r.degree == 5);
  CHECK(r.generators.size() == 2);
  CHECK(r.line == 2);
  CHECK(r.group().order() == 10);
  CHECK(*r.reference("result") == Rational(3, 4));
  CHECK(!r.reference("malle"));
  CHECK(db.warnings.empty());
  CHECK(db.find("5T2") == &db.records[0]);
  CHECK(db.find("5T1") == nullptr);
}

TEST_CASE("empty input") {
  CHECK(parse_group_db("").records.empty());
  CHECK(parse_group_db("\n# nothing\n\n").records.empty());
}

TEST_CASE("errors carry their line") {
  using P = std::pair<ErrorCode, std::optional<int>>;
  CHECK(parse_failure("group 5T2\ndegree 5\ngen (1,2,9)\nend\n") == P{ErrorCode::PointOutOfRange, 3});
  CHECK(parse_failure("group 5T2\ndegree 5\ngen (1,2\nend\n") == P{ErrorCode::MalformedCycle, 3});
  CHECK(parse_failure("group 5T2\ndegree 5\ngen (1,2,1)\nend\n") == P{ErrorCode::RepeatedPoint, 3});
  CHECK(parse_failure("group X\ndegree 3\ngen (1,2)\ncolour red\nend\n") == P{ErrorCode::ParseError, 4});
  CHECK(parse_failure("degree 3\n") == P{ErrorCode::ParseError, 1});
  CHECK(parse_failure("\ngroup X\ndegree 3\ngen (1,2)\n") == P{ErrorCode::ParseError, 2});
  CHECK(parse_failure("group X\ngen (1,2)\nend\n") == P{ErrorCode::ParseError, 2});
  CHECK(parse_failure("group X\ndegree 3\nend\n") == P{ErrorCode::ParseError, 3});
  CHECK(parse_failure("group X\ndegree 3\ngen (1,2)\nref result 1/0\nend\n") == P{ErrorCode::InvalidRational, 4});
  CHECK(parse_failure("group X\ndegree three\n") == P{ErrorCode::ParseError, 2});
  CHECK(parse_failure("group 7T1\ndegree 5\n") == P{ErrorCode::DegreeMismatch, 2});
  CHECK(parse_failure("group A\ndegree 2\ngen (1,2)\nend\n\ngroup A\n") == P{ErrorCode::DuplicateLabel, 6});
  // Closure failure is reported at the group line.
  CHECK(parse_failure("\ngroup Big\ndegree 12\ngen (1,2)\ngen (1,2,3,4,5,6,7,8,9,10,11,12)\nend\n") ==
        P{ErrorCode::GroupTooLarge, 2});
}

TEST_CASE("intransitive groups warn") {
  const auto db = parse_group_db("group V\ndegree 4\ngen (1,2)\ngen (3,4)\nend\n");
  REQUIRE(db.records.size() == 1);
  REQUIRE(db.warnings.size() == 1);
  CHECK(db.warnings[0].find("V") != std::string::npos);
}

TEST_CASE("round trip") {
  for (const char* f : {"transitive_deg5.db", "transitive_deg6.db", "transitive_deg7.db", "transitive_deg8.db",
                        "transitive_deg9.db", "small_groups.db"}) {
    CAPTURE(f);
    const auto db = load_group_db(testing::data_path(f));
    CHECK(!db.records.empty());
    CHECK(db.warnings.empty());
    const auto again = parse_group_db(write_group_db(db.records));
    CHECK(again.records == db.records);
  }
}

TEST_CASE("load errors") {
  CHECK_THROWS_AS(load_group_db("/nonexistent/file.db"), Error);
  const auto path = std::filesystem::temp_directory_path() / "malle_bad.db";
  std::ofstream(path) << "group 5T1\ndegree 5\ngen (1,2,3,4,5)\nend\ngroup 5T1\n";
  try {
    load_group_db(path);
    FAIL("expected DuplicateLabel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateLabel);
    CHECK(e.line() == 5);
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }
  std::filesystem::remove(path);
}
