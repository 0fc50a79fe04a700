#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "zrank/ingest.hpp"
#include "zrank/report.hpp"

using namespace zrank;

namespace {

std::vector<InstitutionRecord> parse(const std::string& text, const IngestConfig& config = {}) {
  std::istringstream in(text);
  return parse_ranking(in, config);
}

}  // namespace

TEST_CASE("parses a well-formed percent-mode file") {
  const auto records = parse("institution,P,PP_top10\nLeiden Univ,10000,12.3\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].name == "Leiden Univ");
  CHECK(records[0].publications.value() == 10000);
  CHECK(records[0].pp_top10.value() == doctest::Approx(0.123).epsilon(1e-14));
}

TEST_CASE("proportion mode takes values verbatim") {
  IngestConfig config;
  config.pp_unit = PpUnit::proportion;
  const auto records = parse("institution,P,PP_top10\nX,100,0.0\nY,200,0.25\n", config);
  REQUIRE(records.size() == 2);
  CHECK(records[0].pp_top10.value() == 0.0);
  CHECK(records[1].pp_top10.value() == 0.25);
}

TEST_CASE("trailing percent sign is stripped") {
  const auto records = parse("institution,P,PP_top10\nA,500,12.3%\nB,600,9%\n");
  CHECK(records[0].pp_top10.value() == doctest::Approx(0.123).epsilon(1e-14));
  CHECK(records[1].pp_top10.value() == doctest::Approx(0.09).epsilon(1e-14));
}

TEST_CASE("quoted fields may contain the delimiter and escaped quotes") {
  const auto records =
      parse("institution,P,PP_top10\n\"Univ of A, Dept B\",100,10\n\"The \"\"U\"\"\",200,11\n");
  REQUIRE(records.size() == 2);
  CHECK(records[0].name == "Univ of A, Dept B");
  CHECK(records[1].name == "The \"U\"");
}

TEST_CASE("blank lines and comment lines are skipped, line numbers stay physical") {
  const std::string text =
      "# ranking extract\n"
      "\n"
      "institution,P,PP_top10\n"
      "Good,1000,10\n"
      "Bad,1000,150\n";
  try {
    parse(text);
    FAIL("expected OutOfRangeError");
  } catch (const OutOfRangeError& e) {
    CHECK(e.line() == 5);
  }
}

TEST_CASE("missing column is reported by name") {
  try {
    parse("institution,P\nA,100\n");
    FAIL("expected MissingColumnError");
  } catch (const MissingColumnError& e) {
    CHECK(e.column() == "PP_top10");
  }
}

TEST_CASE("malformed rows carry the 1-based line number") {
  SUBCASE("wrong field count") {
    try {
      parse("institution,P,PP_top10\nA,100,10\nB,100\n");
      FAIL("expected MalformedRowError");
    } catch (const MalformedRowError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("non-numeric publication count") {
    try {
      parse("institution,P,PP_top10\nA,12x,10\n");
      FAIL("expected MalformedRowError");
    } catch (const MalformedRowError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("non-numeric PP") {
    try {
      parse("institution,P,PP_top10\nA,100,ten\n");
      FAIL("expected MalformedRowError");
    } catch (const MalformedRowError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("empty institution name") {
    CHECK_THROWS_AS(parse("institution,P,PP_top10\n,100,10\n"), MalformedRowError);
  }
  SUBCASE("unterminated quote") {
    CHECK_THROWS_AS(parse("institution,P,PP_top10\n\"A,100,10\n"), MalformedRowError);
  }
}

TEST_CASE("range violations") {
  CHECK_THROWS_AS(parse("institution,P,PP_top10\nA,0,10\n"), OutOfRangeError);
  CHECK_THROWS_AS(parse("institution,P,PP_top10\nA,-5,10\n"), OutOfRangeError);
  CHECK_THROWS_AS(parse("institution,P,PP_top10\nA,100,101\n"), OutOfRangeError);
  CHECK_THROWS_AS(parse("institution,P,PP_top10\nA,100,-1\n"), OutOfRangeError);
  IngestConfig proportion;
  proportion.pp_unit = PpUnit::proportion;
  CHECK_THROWS_AS(parse("institution,P,PP_top10\nA,100,1.5\n", proportion), OutOfRangeError);
}

TEST_CASE("duplicate institutions are a hard error") {
  CHECK_THROWS_AS(parse("institution,P,PP_top10\nA,100,10\nA,200,11\n"),
                  DuplicateInstitutionError);
}

TEST_CASE("empty input has no header") {
  CHECK_THROWS_AS(parse(""), MalformedRowError);
  CHECK_THROWS_AS(parse("# only a comment\n"), MalformedRowError);
}

TEST_CASE("CRLF line endings parse cleanly") {
  const auto records = parse("institution,P,PP_top10\r\nA,100,10\r\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].name == "A");
}

TEST_CASE("custom delimiter and column names") {
  IngestConfig config;
  config.delimiter = ';';
  config.institution_column = "uni";
  config.publications_column = "pubs";
  config.pp_column = "top10";
  const auto records = parse("uni;pubs;top10\nA;100;10\n", config);
  REQUIRE(records.size() == 1);
  CHECK(records[0].publications.value() == 100);
}

TEST_CASE("column order in the file is irrelevant, row order is preserved") {
  const auto records = parse("PP_top10,institution,P\n10,Z,100\n11,A,200\n9,M,300\n");
  REQUIRE(records.size() == 3);
  CHECK(records[0].name == "Z");
  CHECK(records[1].name == "A");
  CHECK(records[2].name == "M");
}

TEST_CASE("ingest config validation") {
  IngestConfig clash;
  clash.institution_column = "P";
  CHECK_THROWS_AS(clash.validate(), std::invalid_argument);
  IngestConfig blank;
  blank.pp_column = "";
  CHECK_THROWS_AS(blank.validate(), std::invalid_argument);
}

TEST_CASE("validate_dataset warnings") {
  std::vector<InstitutionRecord> records;
  records.push_back({"big", SampleSize(10000), Proportion(0.123)});
  CHECK(validate_dataset(records).empty());

  records.push_back({"tiny", SampleSize(30), Proportion(0.1)});
  records.push_back({"zero", SampleSize(1000), Proportion(0.0)});
  records.push_back({"all", SampleSize(1000), Proportion(1.0)});
  const auto warnings = validate_dataset(records);
  REQUIRE(warnings.size() == 3);
  CHECK(warnings[0].kind == WarningKind::small_sample);
  CHECK(warnings[0].institution == "tiny");
  CHECK(warnings[1].kind == WarningKind::degenerate_proportion);
  CHECK(warnings[2].kind == WarningKind::degenerate_proportion);
}

TEST_CASE("small-sample warning threshold sits at P = 50") {
  std::vector<InstitutionRecord> records;
  records.push_back({"edge", SampleSize(50), Proportion(0.1)});
  CHECK(validate_dataset(records).empty());
  records.clear();
  records.push_back({"below", SampleSize(49), Proportion(0.1)});
  CHECK(validate_dataset(records).size() == 1);
}

TEST_CASE("round-trip through the dataset writer") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> pu(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> nu(1, 2000000);
  const std::string name_pool[] = {"Plain U",      "Comma, U",        "Quote \"U\"",
                                   " padded U ",   "Uni;semicolon",   "U"};
  for (int round = 0; round < 200; ++round) {
    std::vector<InstitutionRecord> records;
    for (int i = 0; i < 6; ++i) {
      records.push_back({name_pool[i] + "#" + std::to_string(round) + std::to_string(i),
                         SampleSize(nu(gen)), Proportion(pu(gen))});
    }

    for (const PpUnit unit : {PpUnit::proportion, PpUnit::percent}) {
      IngestConfig config;
      config.pp_unit = unit;
      std::ostringstream text;
      write_ranking_csv(text, records, config);
      std::istringstream in(text.str());
      const auto reparsed = parse_ranking(in, config);
      REQUIRE(reparsed.size() == records.size());
      for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(reparsed[i].name == records[i].name);
        CHECK(reparsed[i].publications.value() == records[i].publications.value());
        if (unit == PpUnit::proportion) {
          CHECK(reparsed[i].pp_top10.value() == records[i].pp_top10.value());
        } else {
          CHECK(std::fabs(reparsed[i].pp_top10.value() - records[i].pp_top10.value()) <= 1e-12);
        }
      }
    }
  }
}
