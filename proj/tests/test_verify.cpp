#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "pexeq/verify.hpp"

using namespace pexeq;
using records::ordered_json;

TEST_CASE("power gap suite is clean on a small box", "[verify]") {
  SuiteResult r = suite_lemma21(30, 8, 25);
  CHECK(r.suite == "lemma21");
  // 9 odd primes up to 30, ordered distinct pairs, 8 values of k.
  CHECK(r.checked == 9 * 8 * 8);
  CHECK(r.violations == 0);
  CHECK(r.passed());
  CHECK(r.records.empty());
}

TEST_CASE("near-collision suite is clean on a small box", "[verify]") {
  SuiteResult r = suite_lemma22(20, 30);
  CHECK(r.checked == 19 * 18);
  CHECK(r.passed());
}

TEST_CASE("quartic residue suite", "[verify]") {
  SuiteResult r = suite_lemma23(20000);
  CHECK(r.checked == 2262 - 1);  // odd primes up to 20000
  CHECK(r.passed());
}

TEST_CASE("octic residue suite", "[verify]") {
  SuiteResult r = suite_lemma24(20000);
  CHECK(r.checked > 100);
  CHECK(r.passed());
}

TEST_CASE("fundamental solution divisibility suite", "[verify]") {
  SuiteResult r = suite_lemma32(500, 3);
  CHECK(r.checked > 40);  // D with solvable negative Pell equation
  CHECK(r.passed());
}

TEST_CASE("small norm suite", "[verify]") {
  SuiteResult r = suite_lemma34(150, 120);
  CHECK(r.checked > 100);
  CHECK(r.passed());
}

TEST_CASE("closed-form expansion suite emits case records", "[verify]") {
  SuiteResult r = suite_lemma35(25, 2);
  CHECK(r.checked == 12 * 2);
  CHECK(r.records.size() == 24);
  CHECK(r.passed());
  for (const auto& rec : r.records) {
    CHECK(rec["type"] == "case");
    CHECK(rec["match"] == true);
  }
}

TEST_CASE("residue observations suite", "[verify]") {
  SuiteResult r = suite_observations(200, 100, 32);
  CHECK(r.violations == 0);
  CHECK(r.checked > 10000);
  CHECK(r.passed());
}

TEST_CASE("solution table suite reproduces all nineteen cases", "[verify]") {
  SuiteResult r = suite_conjecture();
  REQUIRE(r.records.size() == 19);
  CHECK(r.checked == 23);  // 6 + 12 single cases + 5 family members
  CHECK(r.violations == 0);
  CHECK(r.passed());

  size_t families = 0;
  for (const auto& rec : r.records) {
    CHECK(rec["type"] == "case");
    CHECK(rec["match"] == true);
    if (rec["family"] == true) {
      ++families;
      CHECK(rec["mode"] == "N");
      REQUIRE(rec["sub_cases"].size() == 5);
      CHECK(rec["sub_cases"][0]["r"] == 2);
      CHECK(rec["sub_cases"][4]["c"] == 129);
    }
  }
  CHECK(families == 1);

  CHECK(r.records[0]["mode"] == "S");
  CHECK(r.records[0]["a"] == 2);
  CHECK(r.records[0]["b"] == 3);
  CHECK(r.records[0]["c"] == 5);

  ordered_json summary = summary_record(r);
  CHECK(summary["type"] == "summary");
  CHECK(summary["checked"] == 23);
  CHECK(summary["violations"] == 0);
  CHECK(summary["passed"] == true);
  CHECK(summary["config"]["max_z"] == 25);
}

TEST_CASE("suite dispatch by name", "[verify]") {
  SuiteResult r = run_suite("lemma35");
  CHECK(r.suite == "lemma35");
  CHECK(r.passed());
  CHECK_THROWS_AS(run_suite("bogus"), std::invalid_argument);
}

TEST_CASE("desk check finds exactly the known triples", "[verify]") {
  DeskCheckResult d = theorem11_desk_check(20, SearchBounds{20, 200});
  CHECK(d.triples_checked > 100);
  std::set<std::array<uint64_t, 3>> got(d.multi.begin(), d.multi.end());
  std::set<std::array<uint64_t, 3>> expected = {{2, 3, 5}, {2, 3, 11},
                                                {2, 5, 3}, {2, 7, 3},
                                                {3, 5, 2}, {3, 13, 2}};
  CHECK(got == expected);
  CHECK(d.matches_expected);
}

TEST_CASE("multi-solution pairs are rejected by the sieve", "[verify]") {
  CrossCheckResult c = cross_consistency_check(300, SearchBounds{20, 200});
  CHECK(c.passed);
  CHECK(c.pairs_with_solutions > 50);
  std::set<std::pair<uint64_t, uint64_t>> multi;
  for (const auto& e : c.multi) {
    multi.insert({e.p, e.q});
    CHECK(e.solution_count >= 2);
    CHECK_FALSE(e.survives);
  }
  // The four prime pairs from the known triples with a = 2.
  std::set<std::pair<uint64_t, uint64_t>> expected = {
      {3, 5}, {3, 11}, {5, 3}, {7, 3}};
  CHECK(multi == expected);
}
