#pragma once

// Verification suites. Each suite sweeps a parameter box, checks one
// statement the library implements, and returns the violations as records.
// A passing suite has violations == 0; the CLI maps that to exit code 0.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pexeq/arith.hpp"
#include "pexeq/contfrac.hpp"
#include "pexeq/records.hpp"
#include "pexeq/sieve.hpp"
#include "pexeq/solver.hpp"

namespace pexeq {

using records::ordered_json;

struct SuiteResult {
  std::string suite;
  ordered_json params;  // the bounds the suite ran at, echoed into records
  uint64_t checked = 0;
  uint64_t violations = 0;
  std::vector<ordered_json> records;  // case and violation records only
  bool passed() const { return violations == 0; }
};

namespace detail {

inline ordered_json verify_record(const SuiteResult& r, const char* type) {
  ordered_json rec = records::base_record("verify");
  rec["suite"] = r.suite;
  rec["type"] = type;
  return rec;
}

}  // namespace detail

inline ordered_json summary_record(const SuiteResult& r) {
  ordered_json rec = detail::verify_record(r, "summary");
  rec["checked"] = r.checked;
  rec["violations"] = r.violations;
  rec["passed"] = r.passed();
  rec["config"] = r.params;
  return rec;
}

// q^n - p^m = 2^k has at most one solution (m, n) for fixed p, q, k.
inline SuiteResult suite_lemma21(uint64_t prime_max = 50, unsigned k_max = 12,
                                 unsigned box = 30) {
  SuiteResult r;
  r.suite = "lemma21";
  r.params = ordered_json{
      {"prime_max", prime_max}, {"k_max", k_max}, {"box", box}};
  auto primes = primes_up_to(prime_max);
  for (uint64_t p : primes) {
    if (p == 2) continue;
    for (uint64_t q : primes) {
      if (q == 2 || q == p) continue;
      for (unsigned k = 1; k <= k_max; ++k) {
        uint64_t count = lemma21_scan(mpz_class(p), mpz_class(q), k, box, box);
        ++r.checked;
        if (count > 1) {
          ++r.violations;
          ordered_json rec = detail::verify_record(r, "violation");
          rec["p"] = p;
          rec["q"] = q;
          rec["k"] = k;
          rec["count"] = count;
          rec["config"] = r.params;
          r.records.push_back(std::move(rec));
        }
      }
    }
  }
  return r;
}

// |c^z - b^y| lies below max(c^z, b^y)^(1/2) / 4 for at most one pair (z, y).
inline SuiteResult suite_lemma22(uint64_t base_max = 40, unsigned box = 40) {
  SuiteResult r;
  r.suite = "lemma22";
  r.params = ordered_json{{"base_max", base_max}, {"box", box}};
  for (uint64_t b = 2; b <= base_max; ++b) {
    for (uint64_t c = 2; c <= base_max; ++c) {
      if (b == c) continue;
      uint64_t count = lemma22_scan(mpz_class(b), mpz_class(c), box, box);
      ++r.checked;
      if (count > 1) {
        ++r.violations;
        ordered_json rec = detail::verify_record(r, "violation");
        rec["b"] = b;
        rec["c"] = c;
        rec["count"] = count;
        rec["config"] = r.params;
        r.records.push_back(std::move(rec));
      }
    }
  }
  return r;
}

// Primes of the form a^2 + 64 b^2 have 2 as a fourth power residue.
inline SuiteResult suite_lemma23(uint64_t prime_max = 100000) {
  SuiteResult r;
  r.suite = "lemma23";
  r.params = ordered_json{{"prime_max", prime_max}};
  for (uint64_t p : primes_up_to(prime_max)) {
    if (p == 2) continue;
    ++r.checked;
    auto form = represent_form(mpz_class(p), 64);
    if (!form) continue;
    auto pm = PrimeModulus::create(mpz_class(p));
    if (!eth_power_residue(2, pm, 4)) {
      ++r.violations;
      ordered_json rec = detail::verify_record(r, "violation");
      rec["p"] = p;
      rec["a"] = records::zstr(form->a);
      rec["b"] = records::zstr(form->b);
      rec["config"] = r.params;
      r.records.push_back(std::move(rec));
    }
  }
  return r;
}

// For q = 1 mod 16: 2 is an eighth power residue exactly when
// q = a^2 + 256 b^2.
inline SuiteResult suite_lemma24(uint64_t prime_max = 100000) {
  SuiteResult r;
  r.suite = "lemma24";
  r.params = ordered_json{{"prime_max", prime_max}};
  for (uint64_t q : primes_up_to(prime_max)) {
    if (q % 16 != 1) continue;
    ++r.checked;
    auto pm = PrimeModulus::create(mpz_class(q));
    bool octic = eth_power_residue(2, pm, 8);
    bool representable = represent_form(mpz_class(q), 256).has_value();
    if (octic != representable) {
      ++r.violations;
      ordered_json rec = detail::verify_record(r, "violation");
      rec["q"] = q;
      rec["octic"] = octic;
      rec["representable"] = representable;
      rec["config"] = r.params;
      r.records.push_back(std::move(rec));
    }
  }
  return r;
}

// Primes dividing the fundamental solution of x^2 - D y^2 = -1 divide V
// in every solution of U^2 - D V^2 = 1.
inline SuiteResult suite_lemma32(uint64_t d_max = 2000, unsigned n_powers = 4) {
  SuiteResult r;
  r.suite = "lemma32";
  r.params = ordered_json{{"d_max", d_max}, {"n_powers", n_powers}};
  for (uint64_t d = 2; d <= d_max; ++d) {
    mpz_class D(d);
    if (mpz_perfect_square_p(D.get_mpz_t())) continue;
    if (!pell_fundamental(D, -1)) continue;
    ++r.checked;
    if (!lemma32_check(D, n_powers)) {
      ++r.violations;
      ordered_json rec = detail::verify_record(r, "violation");
      rec["d"] = d;
      rec["config"] = r.params;
      r.records.push_back(std::move(rec));
    }
  }
  return r;
}

// Coprime small-norm values |x^2 - y^2 D| below sqrt(D) all appear among
// the k-values of the first period.
inline SuiteResult suite_lemma34(uint64_t d_max = 300, uint64_t y_bound = 200) {
  SuiteResult r;
  r.suite = "lemma34";
  r.params = ordered_json{{"d_max", d_max}, {"y_bound", y_bound}};
  for (uint64_t d = 2; d <= d_max; ++d) {
    mpz_class D(d);
    if (mpz_perfect_square_p(D.get_mpz_t())) continue;
    ++r.checked;
    if (!small_norm_classification(D, y_bound)) {
      ++r.violations;
      ordered_json rec = detail::verify_record(r, "violation");
      rec["d"] = d;
      rec["config"] = r.params;
      r.records.push_back(std::move(rec));
    }
  }
  return r;
}

// sqrt(p^2n + 4) has the closed-form expansion and k-values (4, p^n, p^n,
// 4, 1). Checked against the direct integer expansion for every odd p.
inline SuiteResult suite_lemma35(uint64_t p_max = 49, unsigned n_max = 3) {
  SuiteResult r;
  r.suite = "lemma35";
  r.params = ordered_json{{"p_max", p_max}, {"n_max", n_max}};
  for (uint64_t p = 3; p <= p_max; p += 2) {
    for (unsigned n = 1; n <= n_max; ++n) {
      Lemma35Family fam = lemma35_expected(mpz_class(p), n);
      SurdExpansion direct = sqrt_cf(fam.D);
      auto direct_conv = convergents(fam.D, 5);
      bool match = lemma35_matches(fam, direct, direct_conv);
      ++r.checked;
      if (!match) ++r.violations;
      ordered_json rec = detail::verify_record(r, match ? "case" : "violation");
      rec["p"] = p;
      rec["n"] = n;
      rec["d"] = records::zstr(fam.D);
      rec["match"] = match;
      rec["config"] = r.params;
      r.records.push_back(std::move(rec));
    }
  }
  return r;
}

// Residue-class facts about w: invariance mod p, the negation rule,
// independence from the primitive root, and recovery of v2(t) from
// w(a^t) when w is below v2(p-1).
inline SuiteResult suite_observations(uint64_t p_max = 1000,
                                      uint64_t obs3_p_max = 500,
                                      unsigned t_max = 64) {
  SuiteResult r;
  r.suite = "observations";
  r.params = ordered_json{
      {"p_max", p_max}, {"obs3_p_max", obs3_p_max}, {"t_max", t_max}};
  auto violation = [&r](const char* which, uint64_t p, uint64_t a,
                        ordered_json extra) {
    ++r.violations;
    ordered_json rec = detail::verify_record(r, "violation");
    rec["observation"] = which;
    rec["p"] = p;
    rec["a"] = a;
    for (auto& [key, value] : extra.items()) rec[key] = value;
    rec["config"] = r.params;
    r.records.push_back(std::move(rec));
  };
  for (uint64_t p : primes_up_to(p_max)) {
    if (p == 2) continue;
    auto pm = PrimeModulus::create(mpz_class(p));
    unsigned long vp = v2(pm.pm1());
    mpz_class d1 = find_primitive_root(pm);
    IndexCalculator calc(pm, d1);

    // Second primitive root, when one exists (p = 3 has only one).
    std::optional<IndexCalculator> calc2;
    for (mpz_class d = d1 + 1; d < pm.p(); ++d)
      if (is_primitive_root(d, pm)) {
        calc2.emplace(pm, d);
        break;
      }

    for (uint64_t a = 1; a < p; ++a) {
      unsigned long wa = calc.w_of(a);

      // Congruent arguments give equal w.
      ++r.checked;
      if (calc.w_of(a + p) != wa)
        violation("congruence", p, a, {{"w", wa}, {"w_shifted", calc.w_of(a + p)}});

      // w(-a) follows the three-regime rule.
      ++r.checked;
      unsigned long wneg = calc.w_of(p - a);
      unsigned long predicted = predicted_w_of_negation(wa, vp);
      if (wneg != predicted)
        violation("negation", p, a,
                  {{"w", wa}, {"w_negated", wneg}, {"predicted", predicted}});

      // The root drops out of w.
      if (calc2) {
        ++r.checked;
        if (calc2->w_of(a) != wa)
          violation("root_independence", p, a,
                    {{"w", wa}, {"w_other_root", calc2->w_of(a)}});
      }
    }

    // v2(t) is a function of w(a^t) on the range where w stays small.
    if (p <= obs3_p_max) {
      for (uint64_t a = 1; a < p; ++a) {
        std::map<unsigned long, unsigned> seen;  // w value -> v2(t)
        for (unsigned t = 1; t <= t_max; ++t) {
          uint64_t at = detail::powmod_u64(a, t, p);
          unsigned long wt = calc.w_of(at);
          if (wt >= vp) continue;
          unsigned v2t = static_cast<unsigned>(__builtin_ctz(t));
          auto [it, fresh] = seen.emplace(wt, v2t);
          ++r.checked;
          if (!fresh && it->second != v2t)
            violation("power_valuation", p, a,
                      {{"t", t}, {"w", wt}, {"v2_t", v2t}, {"v2_seen", it->second}});
        }
      }
    }
  }
  return r;
}

namespace detail {

struct GoldenEntry {
  Mode mode;
  uint64_t a, b, c;
  std::vector<SolutionTriple> expected;  // in (z, x) order
};

// The six prime triples with more than one solution.
inline const std::vector<GoldenEntry>& golden_s_table() {
  static const std::vector<GoldenEntry> table = {
      {Mode::S, 2, 3, 5, {{1, 1, 1}, {4, 2, 2}}},
      {Mode::S, 2, 3, 11, {{1, 2, 1}, {3, 1, 1}}},
      {Mode::S, 2, 5, 3, {{2, 1, 2}, {1, 2, 3}}},
      {Mode::S, 2, 7, 3, {{1, 1, 2}, {5, 2, 4}}},
      {Mode::S, 3, 5, 2, {{1, 1, 3}, {3, 1, 5}, {1, 3, 7}}},
      {Mode::S, 3, 13, 2, {{1, 1, 4}, {5, 1, 8}}},
  };
  return table;
}

// The known multi-solution triples with coprime non-power bases, minus
// the 2^r family, which is handled as one aggregated case.
inline const std::vector<GoldenEntry>& golden_n_table() {
  static const std::vector<GoldenEntry> table = {
      {Mode::N, 2, 3, 11, {{1, 2, 1}, {3, 1, 1}}},
      {Mode::N, 2, 3, 35, {{3, 3, 1}, {5, 1, 1}}},
      {Mode::N, 2, 3, 259, {{4, 5, 1}, {8, 1, 1}}},
      {Mode::N, 2, 5, 3, {{2, 1, 2}, {1, 2, 3}}},
      {Mode::N, 2, 5, 133, {{3, 3, 1}, {7, 1, 1}}},
      {Mode::N, 2, 7, 3, {{1, 1, 2}, {5, 2, 4}}},
      {Mode::N, 2, 89, 91, {{1, 1, 1}, {13, 1, 2}}},
      {Mode::N, 2, 91, 8283, {{1, 2, 1}, {13, 1, 1}}},
      {Mode::N, 3, 5, 2, {{1, 1, 3}, {3, 1, 5}, {1, 3, 7}}},
      {Mode::N, 3, 10, 13, {{1, 1, 1}, {7, 1, 3}}},
      {Mode::N, 3, 13, 2, {{1, 1, 4}, {5, 1, 8}}},
      {Mode::N, 3, 13, 2200, {{1, 3, 1}, {7, 1, 1}}},
  };
  return table;
}

inline ordered_json triples_json(const std::vector<SolutionTriple>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : v)
    arr.push_back(ordered_json{{"x", s.x}, {"y", s.y}, {"z", s.z}});
  return arr;
}

}  // namespace detail

// Every entry of the two solution tables above, re-solved from scratch and
// compared for exact set equality. The (2, 2^r - 1, 2^r + 1) family is one
// record covering r in {2, 4, 5, 6, 7} (r = 3 makes c a perfect power).
inline SuiteResult suite_conjecture(uint32_t max_z = 25,
                                    uint32_t max_bits = 256) {
  SuiteResult r;
  r.suite = "conjecture";
  r.params = ordered_json{{"max_z", max_z}, {"max_bits", max_bits}};
  SearchBounds bounds{max_z, max_bits};

  auto run_entry = [&](const detail::GoldenEntry& e) {
    auto inst = EquationInstance::create(e.a, e.b, e.c, e.mode);
    SolutionSet found = find_solutions(inst, bounds);
    bool match = found.exhaustive_within_bounds && found.solutions == e.expected;
    ++r.checked;
    if (!match) ++r.violations;
    ordered_json rec = detail::verify_record(r, match ? "case" : "violation");
    rec["family"] = false;
    rec["mode"] = records::mode_str(e.mode);
    rec["a"] = e.a;
    rec["b"] = e.b;
    rec["c"] = e.c;
    rec["expected"] = detail::triples_json(e.expected);
    rec["found"] = detail::triples_json(found.solutions);
    rec["match"] = match;
    rec["config"] = r.params;
    r.records.push_back(std::move(rec));
  };

  for (const auto& e : detail::golden_s_table()) run_entry(e);

  // 2^x + (2^r - 1)^y = (2^r + 1)^z with solutions (1,1,1) and (r+2,2,2).
  {
    bool family_match = true;
    ordered_json subs = ordered_json::array();
    for (uint32_t rr : {2u, 4u, 5u, 6u, 7u}) {
      uint64_t b = (uint64_t(1) << rr) - 1, c = (uint64_t(1) << rr) + 1;
      auto inst = EquationInstance::create(2, b, c, Mode::N);
      SolutionSet found = find_solutions(inst, bounds);
      std::vector<SolutionTriple> expected = {{1, 1, 1}, {rr + 2, 2, 2}};
      bool match =
          found.exhaustive_within_bounds && found.solutions == expected;
      ++r.checked;
      if (!match) ++r.violations;
      family_match = family_match && match;
      subs.push_back(ordered_json{{"r", rr},
                                  {"a", 2},
                                  {"b", b},
                                  {"c", c},
                                  {"expected", detail::triples_json(expected)},
                                  {"found", detail::triples_json(found.solutions)},
                                  {"match", match}});
    }
    ordered_json rec =
        detail::verify_record(r, family_match ? "case" : "violation");
    rec["family"] = true;
    rec["mode"] = "N";
    rec["r_values"] = ordered_json::array({2, 4, 5, 6, 7});
    rec["sub_cases"] = subs;
    rec["match"] = family_match;
    rec["config"] = r.params;
    r.records.push_back(std::move(rec));
  }

  for (const auto& e : detail::golden_n_table()) run_entry(e);
  return r;
}

inline SuiteResult run_suite(const std::string& name) {
  if (name == "lemma21") return suite_lemma21();
  if (name == "lemma22") return suite_lemma22();
  if (name == "lemma23") return suite_lemma23();
  if (name == "lemma24") return suite_lemma24();
  if (name == "lemma32") return suite_lemma32();
  if (name == "lemma34") return suite_lemma34();
  if (name == "lemma35") return suite_lemma35();
  if (name == "observations") return suite_observations();
  if (name == "conjecture") return suite_conjecture();
  throw std::invalid_argument("unknown suite: " + name);
}

struct DeskCheckResult {
  uint64_t triples_checked = 0;
  std::vector<std::array<uint64_t, 3>> multi;  // triples with 2+ solutions
  bool matches_expected = false;
};

// Solve every ordered prime triple (a, b, c) with a < b, c distinct from
// both, and all three at most prime_max. The triples with more than one
// solution must be exactly the six in the golden table.
inline DeskCheckResult theorem11_desk_check(uint64_t prime_max = 100,
                                            SearchBounds bounds = {20, 200}) {
  DeskCheckResult out;
  auto primes = primes_up_to(prime_max);
  for (uint64_t a : primes) {
    for (uint64_t b : primes) {
      if (b <= a) continue;
      for (uint64_t c : primes) {
        if (c == a || c == b) continue;
        auto inst = EquationInstance::create(a, b, c, Mode::S);
        ++out.triples_checked;
        if (count_solutions(inst, bounds) >= 2) out.multi.push_back({a, b, c});
      }
    }
  }
  std::set<std::array<uint64_t, 3>> expected = {{2, 3, 5},  {2, 3, 11},
                                                {2, 5, 3},  {2, 7, 3},
                                                {3, 5, 2},  {3, 13, 2}};
  std::set<std::array<uint64_t, 3>> got(out.multi.begin(), out.multi.end());
  out.matches_expected = got == expected;
  return out;
}

struct CrossCheckEntry {
  uint64_t p, q;
  uint64_t solution_count;
  bool survives;
};

struct CrossCheckResult {
  uint64_t pairs_with_solutions = 0;
  std::vector<CrossCheckEntry> multi;  // pairs with 2+ solutions
  bool passed = false;  // no multi pair also survives the sieve
};

// 2^x + p^y = q^z over odd primes p, q up to prime_max: any pair with two
// or more solutions inside the bounds must be rejected by the sieve.
// Enumerates q^z - 2^x and factors out the smallest odd prime; a hit needs
// the remainder to be a pure power of that prime.
inline CrossCheckResult cross_consistency_check(uint64_t prime_max = 5000,
                                                SearchBounds bounds = {20, 200}) {
  CrossCheckResult out;
  auto primes = primes_up_to(prime_max);
  std::map<std::pair<uint64_t, uint64_t>, uint64_t> counts;  // (p, q) -> hits
  for (uint64_t q : primes) {
    if (q == 2) continue;
    mpz_class qz = 1;
    for (uint32_t z = 1; z <= bounds.max_z; ++z) {
      qz *= q;
      if (mpz_sizeinbase(qz.get_mpz_t(), 2) > bounds.max_bits) break;
      mpz_class ax = 2;
      for (uint32_t x = 1; ax < qz; ++x, ax <<= 1) {
        mpz_class rem = qz - ax;  // odd, since q is odd
        if (rem < 3) continue;
        uint64_t p = 0;
        for (uint64_t f : primes) {
          if (f == 2) continue;
          if (mpz_divisible_ui_p(rem.get_mpz_t(), f)) {
            p = f;
            break;
          }
        }
        if (p == 0 || p == q) continue;
        if (is_power_of(rem, mpz_class(p))) ++counts[{p, q}];
      }
    }
  }
  out.pairs_with_solutions = counts.size();
  out.passed = true;
  for (const auto& [pq, n] : counts) {
    if (n < 2) continue;
    auto pair = CandidatePair::create(mpz_class(pq.first), mpz_class(pq.second));
    SieveReport rep = full_report(pair);
    out.multi.push_back({pq.first, pq.second, n, rep.survives});
    if (rep.survives) out.passed = false;
  }
  return out;
}

}  // namespace pexeq
