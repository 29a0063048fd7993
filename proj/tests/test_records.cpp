#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "pexeq/records.hpp"
#include "pexeq/sieve.hpp"
#include "pexeq/solver.hpp"

using namespace pexeq;
using records::ordered_json;

static std::string roundtrip(const ordered_json& rec) {
  return ordered_json::parse(rec.dump()).dump();
}

TEST_CASE("solve record layout and round trip", "[records]") {
  auto inst = EquationInstance::create(2, 3, 5, Mode::S);
  SolutionSet set = find_solutions(inst, SearchBounds{25, 512});
  ordered_json rec = records::solve_record(set);

  std::string s = rec.dump();
  CHECK(s.rfind("{\"tool\":\"pexeq\",\"version\":\"0.1.0\",\"command\":\"solve\","
                "\"exhaustive\":true,\"count\":2,\"solutions\":",
                0) == 0);
  CHECK(rec["solutions"][0] == ordered_json({{"x", 1}, {"y", 1}, {"z", 1}}));
  CHECK(rec["solutions"][1] == ordered_json({{"x", 4}, {"y", 2}, {"z", 2}}));
  CHECK(rec["config"]["mode"] == "S");
  CHECK(rec["config"]["a"] == "2");
  CHECK(rec["config"]["max_z"] == 25);
  CHECK(rec["config"]["max_bits"] == 512);
  CHECK(roundtrip(rec) == s);
}

TEST_CASE("sieve record layout, notes, and csv row", "[records]") {
  auto pair = CandidatePair::create(241, 113);
  SieveReport rep = full_report(pair);
  ordered_json config{{"scope", "pair"}, {"p", "241"}, {"q", "113"}};
  ordered_json rec = records::sieve_record(rep, config);

  std::vector<std::string> keys;
  for (auto it = rec.begin(); it != rec.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{
                    "tool", "version", "command", "p", "q", "cong48",
                    "val_order", "order_parity", "octic", "size_p", "size_q",
                    "mod24_class", "survives", "notes", "config"});

  CHECK(rec["p"] == "241");
  CHECK(rec["q"] == "113");
  CHECK(rec["cong48"] == true);
  CHECK(rec["val_order"] == true);
  CHECK(rec["order_parity"] == false);
  CHECK(rec["octic"] == true);
  CHECK(rec["mod24_class"] == "1,17");
  CHECK(rec["survives"] == false);
  CHECK(rec["notes"].is_object());
  CHECK(roundtrip(rec) == rec.dump());

  CHECK(records::csv_header() ==
        "p,q,cong48,val_order,order_parity,octic,size_p,size_q,survives");
  CHECK(records::csv_row(rep) == "241,113,true,true,false,true,false,false,false");
}

TEST_CASE("condition serialization covers the n/a state", "[records]") {
  ConditionResult na{ConditionState::not_applicable, "q % 8 != 1"};
  CHECK(records::condition_json(na) == "n/a");
  CHECK(records::csv_condition(na) == "na");
  auto pair = CandidatePair::create(5, 7);  // q - 1 not divisible by 8
  SieveReport rep = full_report(pair);
  CHECK(rep.octic.state == ConditionState::not_applicable);
  ordered_json rec = records::sieve_record(
      rep, ordered_json{{"scope", "pair"}, {"p", "5"}, {"q", "7"}});
  CHECK(rec["octic"] == "n/a");
  CHECK(rec["notes"].contains("octic"));
  std::string row = records::csv_row(rep);
  CHECK(row.find(",na,") != std::string::npos);
}

TEST_CASE("cf expansion record", "[records]") {
  SurdExpansion e = sqrt_cf(13);
  auto conv = convergents(13, 5);
  ordered_json rec = records::cf_expansion_record(e, conv, 5);
  CHECK(rec["kind"] == "expansion");
  CHECK(rec["d"] == "13");
  CHECK(rec["a0"] == "3");
  CHECK(rec["period"] ==
        ordered_json::array({"1", "1", "1", "1", "6"}));
  CHECK(rec["period_length"] == 5);
  CHECK(rec["convergents"].size() == 5);
  CHECK(rec["convergents"][4] ==
        ordered_json({{"m", 4}, {"P", "18"}, {"Q", "5"}, {"k", "1"}}));
  CHECK(rec["config"] == ordered_json({{"d", "13"}, {"terms", 5}}));
  CHECK(roundtrip(rec) == rec.dump());
}

TEST_CASE("cf closed-form record", "[records]") {
  Lemma35Family fam = lemma35_expected(3, 1);
  SurdExpansion direct = sqrt_cf(fam.D);
  auto direct_conv = convergents(fam.D, 5);
  ordered_json rec = records::cf_lemma35_record(fam, direct, direct_conv, true);
  CHECK(rec["kind"] == "lemma35");
  CHECK(rec["p"] == "3");
  CHECK(rec["n"] == 1);
  CHECK(rec["d"] == "13");
  CHECK(rec["predicted_period"] == rec["expanded_period"]);
  CHECK(rec["k_sequence"] ==
        ordered_json::array({"4", "3", "3", "4", "1"}));
  CHECK(rec["match"] == true);
  CHECK(roundtrip(rec) == rec.dump());
}

TEST_CASE("abcq record carries a fixed-width quality", "[records]") {
  AbcTriple t = abc_quality(1, 8, 9);
  ordered_json rec = records::abcq_record(t);
  CHECK(rec["a"] == "1");
  CHECK(rec["b"] == "8");
  CHECK(rec["c"] == "9");
  CHECK(rec["rad"] == "6");
  std::string q = rec["quality"];
  CHECK(q.size() == 10);  // d.dddddddd
  double parsed = std::stod(q);
  CHECK(std::abs(parsed - std::log(9.0) / std::log(6.0)) < 1e-8);
  CHECK(roundtrip(rec) == rec.dump());
}

TEST_CASE("quality formatting is deterministic", "[records]") {
  CHECK(records::format_quality(1.5) == "1.50000000");
  CHECK(records::format_quality(1.6299114) == "1.62991140");
}
