#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "common.hpp"
#include "rankdrift/ingest.hpp"
#include "rankdrift/kendall.hpp"

using namespace rankdrift;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const std::string toy_race =
    "entrant_id,name,status,position,fastest_lap\n"
    "a,Alpha,FIN,1,0\n"
    "b,Beta,FIN,2,1\n"
    "c,Gamma,DNF,,0\n";

long error_line(const ParseError& e) { return e.line(); }

}  // namespace

TEST_CASE("parse_gp_csv accepts the documented rows") {
  const GpClassification gp = parse_gp_csv(toy_race, "toy");
  REQUIRE(gp.entries.size() == 3);
  CHECK(gp.label == "toy");
  CHECK(gp.entries[0].entrant_id == "a");
  CHECK(gp.entries[0].status == RaceStatus::Fin);
  CHECK(gp.entries[0].position == 1);
  CHECK_FALSE(gp.entries[0].fastest_lap);
  CHECK(gp.entries[1].fastest_lap);
  CHECK(gp.entries[2].status == RaceStatus::Dnf);
  CHECK_FALSE(gp.entries[2].position.has_value());

  SECTION("CRLF input parses identically") {
    std::string crlf = toy_race;
    std::string::size_type at = 0;
    while ((at = crlf.find('\n', at)) != std::string::npos) {
      crlf.replace(at, 1, "\r\n");
      at += 2;
    }
    CHECK(parse_gp_csv(crlf, "toy").entries.size() == 3);
  }
}

TEST_CASE("parse_gp_csv rejects malformed input with line numbers") {
  const auto line_of = [](const std::string& bytes) -> long {
    try {
      parse_gp_csv(bytes);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      return error_line(e);
    }
    return -1;
  };

  CHECK_THROWS_AS(parse_gp_csv(""), ParseError);
  CHECK(line_of("nope\na,A,FIN,1,0\n") == 1);
  CHECK(line_of("entrant_id,name,status,position,fastest_lap\n"
                "a,A,FIN,1,0\n"
                "\n"
                "b,B,FIN,2,0\n") == 3);
  CHECK(line_of("entrant_id,name,status,position,fastest_lap\n"
                "a,A,FIN,1\n") == 2);
  CHECK(line_of("entrant_id,name,status,position,fastest_lap\n"
                ",A,FIN,1,0\n") == 2);
  // statuses are case-sensitive: no silent coercion
  CHECK(line_of("entrant_id,name,status,position,fastest_lap\n"
                "a,A,fin,1,0\n") == 2);
  CHECK(line_of("entrant_id,name,status,position,fastest_lap\n"
                "a,A,FIN,,0\n") == 2);
  CHECK(line_of("entrant_id,name,status,position,fastest_lap\n"
                "a,A,FIN,0,0\n") == 2);
  CHECK(line_of("entrant_id,name,status,position,fastest_lap\n"
                "a,A,DNF,7,0\n") == 2);
  CHECK(line_of("entrant_id,name,status,position,fastest_lap\n"
                "a,A,FIN,1,yes\n") == 2);
  CHECK(line_of("entrant_id,name,status,position,fastest_lap\n"
                "a,A,FIN,1,0\n"
                "a,A,FIN,2,0\n") == 3);
  CHECK(line_of("entrant_id,name,status,position,fastest_lap\n"
                "a,A,DNF,,0\n"
                "b,B,DNS,,0\n") == 0);  // no finisher: whole-file error
  CHECK(line_of("entrant_id,name,status,position,fastest_lap\n"
                "a,A,FIN,1,0\n"
                "b,B,FIN,1,0\n") == 3);
  CHECK(line_of("entrant_id,name,status,position,fastest_lap\n"
                "a,A,FIN,1,0\n"
                "b,B,FIN,3,0\n") == 3);

  SECTION("duplicate entrant message cites the first occurrence") {
    CHECK_THROWS_WITH(
        parse_gp_csv("entrant_id,name,status,position,fastest_lap\n"
                     "a,A,FIN,1,0\n"
                     "a,A,FIN,2,0\n"),
        Catch::Matchers::ContainsSubstring("first seen on line 2"));
  }
}

TEST_CASE("gp csv round-trips byte-identically") {
  SECTION("toy race") {
    const GpClassification gp = parse_gp_csv(toy_race);
    CHECK(write_gp_csv(gp) == toy_race);
    CHECK(parse_gp_csv(write_gp_csv(gp)).entries.size() == 3);
  }
  SECTION("encoded season races") {
    for (const char* name : {"gp01.csv", "gp02.csv", "gp03.csv"}) {
      const auto path = testutil::data_dir() + "/seasons/f1-2012-opening/" +
                        name;
      const std::string bytes = slurp(path);
      CHECK(write_gp_csv(parse_gp_csv(bytes)) == bytes);
    }
  }
}

TEST_CASE("season manifests load, validate and apply the year rule") {
  const auto dir = std::filesystem::temp_directory_path() /
                   "rankdrift-ingest-test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "r1.csv") << toy_race;
  std::ofstream(dir / "r2.csv") << toy_race;
  const std::string full_roster =
      R"("roster": [)"
      R"({"id": "a", "name": "Alpha", "team": "t1"},)"
      R"({"id": "b", "name": "Beta", "team": "t1"},)"
      R"({"id": "c", "name": "Gamma", "team": "t2"}])";
  const auto manifest = [&](int year, const std::string& extra = "") {
    return "{\"year\": " + std::to_string(year) +
           ", \"entity\": \"constructors\", " + full_roster +
           ", \"races\": [\"r1.csv\", \"r2.csv\"]" + extra + "}";
  };

  SECTION("fixture manifest") {
    const SeasonDataset season = load_season_manifest(
        testutil::data_dir() + "/seasons/f1-2012-opening/manifest.json");
    CHECK(season.year == 2012);
    CHECK(season.entity == Entity::Constructors);
    CHECK(season.roster.size() == 25);
    CHECK(season.races.size() == 3);
    CHECK(season.races[0].label == "GP1");
    CHECK_FALSE(season.scheme.fastest_lap_bonus);
    CHECK(season.team_of().at("vettel") == "red_bull");
    CHECK(season.teams().size() == 12);
    CHECK(season.teams().front() == "red_bull");
  }
  SECTION("fastest-lap bonus by year and by override") {
    CHECK_FALSE(parse_season_manifest(manifest(2012), dir)
                    .scheme.fastest_lap_bonus);
    CHECK(parse_season_manifest(manifest(2020), dir)
              .scheme.fastest_lap_bonus);
    CHECK(parse_season_manifest(manifest(2012, ", \"fastest_lap_bonus\": true"),
                                dir)
              .scheme.fastest_lap_bonus);
  }
  SECTION("rejects a single race") {
    const std::string one = "{\"year\": 2012, \"entity\": \"drivers\", " +
                            full_roster + ", \"races\": [\"r1.csv\"]}";
    CHECK_THROWS_AS(parse_season_manifest(one, dir), StructuralError);
  }
  SECTION("missing race file") {
    const std::string missing =
        "{\"year\": 2012, \"entity\": \"drivers\", " + full_roster +
        ", \"races\": [\"r1.csv\", \"nope.csv\"]}";
    CHECK_THROWS_WITH(parse_season_manifest(missing, dir),
                      Catch::Matchers::ContainsSubstring("nope.csv"));
  }
  SECTION("race errors carry the file name") {
    std::ofstream(dir / "bad.csv") << "wrong header\n";
    const std::string bad =
        "{\"year\": 2012, \"entity\": \"drivers\", " + full_roster +
        ", \"races\": [\"r1.csv\", \"bad.csv\"]}";
    CHECK_THROWS_WITH(parse_season_manifest(bad, dir),
                      Catch::Matchers::ContainsSubstring("bad.csv"));
  }
  SECTION("invalid JSON") {
    CHECK_THROWS_AS(parse_season_manifest("{not json", dir), ParseError);
  }
  SECTION("duplicate roster ids") {
    const std::string dup =
        "{\"year\": 2012, \"entity\": \"drivers\", \"roster\": ["
        "{\"id\": \"a\", \"name\": \"A\"}, {\"id\": \"a\", \"name\": \"A2\"},"
        "{\"id\": \"b\", \"name\": \"B\"}, {\"id\": \"c\", \"name\": \"C\"}],"
        "\"races\": [\"r1.csv\", \"r2.csv\"]}";
    CHECK_THROWS_AS(parse_season_manifest(dup, dir), DataError);
  }
  SECTION("constructors entity requires teams") {
    const std::string no_team =
        "{\"year\": 2012, \"entity\": \"constructors\", \"roster\": ["
        "{\"id\": \"a\", \"name\": \"A\", \"team\": \"t1\"},"
        "{\"id\": \"b\", \"name\": \"B\"},"
        "{\"id\": \"c\", \"name\": \"C\", \"team\": \"t2\"}],"
        "\"races\": [\"r1.csv\", \"r2.csv\"]}";
    CHECK_THROWS_AS(parse_season_manifest(no_team, dir), DataError);
  }
  SECTION("race entrant missing from the roster") {
    const std::string short_roster =
        "{\"year\": 2012, \"entity\": \"drivers\", \"roster\": ["
        "{\"id\": \"a\", \"name\": \"A\"}, {\"id\": \"b\", \"name\": \"B\"}],"
        "\"races\": [\"r1.csv\", \"r2.csv\"]}";
    CHECK_THROWS_WITH(parse_season_manifest(short_roster, dir),
                      Catch::Matchers::ContainsSubstring("'c'"));
  }
}

TEST_CASE("standings matrices become complete untied series") {
  const std::string bytes =
      slurp(testutil::data_dir() + "/standings/toy-league.csv");
  const RankingSeries series = parse_standings_matrix(bytes);
  CHECK(series.count() == 3);
  CHECK(series.universe_size() == 4);
  CHECK(series.label(0) == "r1");
  CHECK(series.label(2) == "r3");
  for (std::size_t i = 0; i < series.count(); ++i) {
    CHECK(series[i].complete());
    CHECK_FALSE(series[i].has_ties());
  }
  CHECK(series[0][0] == Slot{1});
  CHECK(series[1][0] == Slot{2});

  SECTION("identical columns give tau_ev = 1 downstream") {
    const RankingSeries same = parse_standings_matrix(
        "entrant_id,w1,w2\n"
        "x,1,1\n"
        "y,2,2\n"
        "z,3,3\n");
    const NsResult r = tau_evolutive(same, PenaltyConfig{0.5});
    CHECK(r.tau_ev == 1.0);
    CHECK(r.ns == 0.0);
  }
}

TEST_CASE("standings matrices reject structural violations") {
  const auto line_of = [](const std::string& bytes) -> long {
    try {
      parse_standings_matrix(bytes);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      return error_line(e);
    }
    return -1;
  };

  CHECK_THROWS_AS(parse_standings_matrix(""), ParseError);
  CHECK(line_of("round,r1,r2\nx,1,1\ny,2,2\n") == 1);
  CHECK_THROWS_AS(parse_standings_matrix("entrant_id,r1\nx,1\ny,2\n"),
                  StructuralError);
  CHECK_THROWS_AS(parse_standings_matrix("entrant_id,r1,r2\nx,1,1\n"),
                  StructuralError);
  CHECK(line_of("entrant_id,r1,r2\nx,1,1\ny,2\n") == 3);
  CHECK(line_of("entrant_id,r1,r2\nx,1,1\n\ny,2,2\n") == 3);
  CHECK(line_of("entrant_id,r1,r2\nx,1,1\nx,2,2\n") == 3);
  CHECK(line_of("entrant_id,r1,r2\nx,1,one\ny,2,2\n") == 2);

  SECTION("a column with two equal positions is rejected") {
    CHECK_THROWS_WITH(parse_standings_matrix("entrant_id,r1,r2\n"
                                             "x,1,1\n"
                                             "y,1,2\n"),
                      Catch::Matchers::ContainsSubstring("r1"));
  }
  SECTION("a position beyond the entrant count is rejected") {
    CHECK_THROWS_WITH(parse_standings_matrix("entrant_id,r1,r2\n"
                                             "x,1,1\n"
                                             "y,3,2\n"),
                      Catch::Matchers::ContainsSubstring("3"));
  }
}
