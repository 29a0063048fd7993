#pragma once

// Conditions a prime pair (p, q) must clear for p^x + q^y = z^2 to stand a
// chance of a second solution, evaluated independently and reported
// per-condition, plus abc-quality helpers.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

#include "pexeq/arith.hpp"

namespace pexeq {

class CandidatePair {
 public:
  static CandidatePair create(const mpz_class& p, const mpz_class& q, int mr_rounds = 30) {
    if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_prime(p, mr_rounds))
      throw std::invalid_argument("CandidatePair: p must be an odd prime");
    if (q < 3 || mpz_even_p(q.get_mpz_t()) || !is_prime(q, mr_rounds))
      throw std::invalid_argument("CandidatePair: q must be an odd prime");
    if (p == q) throw std::invalid_argument("CandidatePair: p and q must differ");
    CandidatePair pr;
    pr.p_ = p;
    pr.q_ = q;
    return pr;
  }

  const mpz_class& p() const { return p_; }
  const mpz_class& q() const { return q_; }

 private:
  CandidatePair() = default;
  mpz_class p_, q_;
};

inline bool cong48_check(const CandidatePair& pr) {
  return pr.p() % 48 == 1 && pr.q() % 48 == 17;
}

// v2(p-1) even and no larger than v2(q-1).
inline bool valuation_check(const CandidatePair& pr) {
  unsigned long vp = v2(pr.p() - 1), vq = v2(pr.q() - 1);
  return vp % 2 == 0 && vp <= vq;
}

// At least one of ord_p(q), ord_q(p) is odd. Needs p-1 and q-1 factored,
// so this is the one condition that can fall outside the envelope.
inline bool order_parity_check(const CandidatePair& pr) {
  auto pmp = PrimeModulus::create(pr.p());
  auto pmq = PrimeModulus::create(pr.q());
  mpz_class op = multiplicative_order(pr.q(), pmp);
  mpz_class oq = multiplicative_order(pr.p(), pmq);
  return mpz_odd_p(op.get_mpz_t()) || mpz_odd_p(oq.get_mpz_t());
}

// 2 must be an octic residue mod q, except that v2(p-1) = v2(q-1) = 4
// exempts the pair. Vacuous (domain_error) when 8 does not divide q-1.
inline bool octic_check(const CandidatePair& pr) {
  if ((pr.q() - 1) % 8 != 0)
    throw std::domain_error("octic_check: 8 does not divide q - 1; not applicable");
  unsigned long vp = v2(pr.p() - 1), vq = v2(pr.q() - 1);
  if (vp == 4 && vq == 4) return true;
  return mod_pow(2, (pr.q() - 1) / 8, pr.q()) == 1;
}

// Exponent pattern of a hypothetical second solution: (x1, y1, 1) with
// x1, y1 even, and (x2, y2, z2) with x2 even, y2 odd, z2 odd > 1.
class SolutionShape {
 public:
  static SolutionShape create(unsigned x1, unsigned y1, unsigned x2, unsigned y2,
                              unsigned z2) {
    if (x1 < 2 || x1 % 2 != 0)
      throw std::invalid_argument("SolutionShape: x1 must be even and >= 2");
    if (y1 < 2 || y1 % 2 != 0)
      throw std::invalid_argument("SolutionShape: y1 must be even and >= 2");
    if (x2 < 2 || x2 % 2 != 0)
      throw std::invalid_argument("SolutionShape: x2 must be even and >= 2");
    if (y2 % 2 != 1) throw std::invalid_argument("SolutionShape: y2 must be odd");
    if (z2 < 3 || z2 % 2 != 1)
      throw std::invalid_argument("SolutionShape: z2 must be odd and > 1");
    SolutionShape s;
    s.x1_ = x1;
    s.y1_ = y1;
    s.x2_ = x2;
    s.y2_ = y2;
    s.z2_ = z2;
    return s;
  }

  unsigned x1() const { return x1_; }
  unsigned y1() const { return y1_; }
  unsigned x2() const { return x2_; }
  unsigned y2() const { return y2_; }
  unsigned z2() const { return z2_; }

 private:
  SolutionShape() = default;
  unsigned x1_ = 2, y1_ = 2, x2_ = 2, y2_ = 1, z2_ = 3;
};

// Size constraints a second solution forces on its exponents:
//   x1 >= 28 or x2 >= 88, and
//   if v2(p-1) = v2(q-1) <= 27 then x2 >= 88, and
//   if v2(p-1) <= 87 and v2(p-1) < v2(q-1) then x1 >= 28.
inline bool theorem14_bounds(const SolutionShape& s, unsigned long v2p, unsigned long v2q) {
  if (s.x1() < 28 && s.x2() < 88) return false;
  if (v2p == v2q && v2p <= 27 && s.x2() < 88) return false;
  if (v2p < v2q && v2p <= 87 && s.x1() < 28) return false;
  return true;
}

// The valuation pattern ties the even exponents to v2(p-1):
// equal valuations pin x1, strictly increasing ones pin x2.
inline bool shape_consistency(const SolutionShape& s, const CandidatePair& pr) {
  unsigned long vp = v2(pr.p() - 1), vq = v2(pr.q() - 1);
  if (vp == vq) return s.x1() == vp;
  if (vp < vq) return s.x2() == vp;
  return false;
}

enum class ConditionState { pass, fail, not_applicable };

struct ConditionResult {
  ConditionState state = ConditionState::fail;
  std::string note;  // set when not_applicable

  bool passed() const { return state == ConditionState::pass; }
};

struct SieveReport {
  mpz_class p, q;
  ConditionResult cong48, val_order, order_parity, octic;
  bool size_p = false;           // p > 10^9, informational
  bool size_q = false;           // q > 10^18, informational
  std::string mod24_class;       // "13,5", "13,17", "1,17", or "none"
  bool survives = false;         // all four conditions pass
};

// Evaluates every condition, never short-circuits, and keeps failures
// independent: an error in one condition downgrades only that condition.
inline SieveReport full_report(const CandidatePair& pr) {
  SieveReport rep;
  rep.p = pr.p();
  rep.q = pr.q();
  auto verdict = [](bool ok) {
    return ConditionResult{ok ? ConditionState::pass : ConditionState::fail, ""};
  };
  rep.cong48 = verdict(cong48_check(pr));
  rep.val_order = verdict(valuation_check(pr));
  try {
    rep.order_parity = verdict(order_parity_check(pr));
  } catch (const factorization_error& e) {
    rep.order_parity = {ConditionState::not_applicable, e.what()};
  }
  try {
    rep.octic = verdict(octic_check(pr));
  } catch (const std::domain_error& e) {
    rep.octic = {ConditionState::not_applicable, e.what()};
  }
  mpz_class bound_p = 1000000000;               // 10^9
  mpz_class bound_q = mpz_class(1000000000) * 1000000000;  // 10^18
  rep.size_p = pr.p() > bound_p;
  rep.size_q = pr.q() > bound_q;
  unsigned long p24 = mpz_class(pr.p() % 24).get_ui();
  unsigned long q24 = mpz_class(pr.q() % 24).get_ui();
  if (p24 == 13 && q24 == 5)
    rep.mod24_class = "13,5";
  else if (p24 == 13 && q24 == 17)
    rep.mod24_class = "13,17";
  else if (p24 == 1 && q24 == 17)
    rep.mod24_class = "1,17";
  else
    rep.mod24_class = "none";
  rep.survives = rep.cong48.passed() && rep.val_order.passed() &&
                 rep.order_parity.passed() && rep.octic.passed();
  return rep;
}

namespace detail {

// ln(num) as a double, computed at the given MPFR precision.
inline double log_mpfr(const mpz_class& num, mpfr_prec_t prec) {
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_set_z(t, num.get_mpz_t(), MPFR_RNDN);
  mpfr_log(t, t, MPFR_RNDN);
  double out = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return out;
}

inline double log_ratio_mpfr(const mpz_class& num, const mpz_class& den,
                             mpfr_prec_t prec) {
  mpfr_t ln, ld;
  mpfr_init2(ln, prec);
  mpfr_init2(ld, prec);
  mpfr_set_z(ln, num.get_mpz_t(), MPFR_RNDN);
  mpfr_log(ln, ln, MPFR_RNDN);
  mpfr_set_z(ld, den.get_mpz_t(), MPFR_RNDN);
  mpfr_log(ld, ld, MPFR_RNDN);
  mpfr_div(ln, ln, ld, MPFR_RNDN);
  double out = mpfr_get_d(ln, MPFR_RNDN);
  mpfr_clear(ln);
  mpfr_clear(ld);
  return out;
}

}  // namespace detail

struct AbcTriple {
  mpz_class a, b, c;
  mpz_class rad;   // radical of a*b*c
  double quality;  // log(c) / log(rad)
};

// Quality of an abc triple a + b = c, gcd(a, b) = 1. The radical comes
// from factoring a, b, c separately (80-bit composite cap). The log ratio
// is evaluated at two precisions and must agree to 1e-9.
inline AbcTriple abc_quality(const mpz_class& a, const mpz_class& b, const mpz_class& c) {
  if (a < 1 || b < 1) throw std::invalid_argument("abc_quality: a, b must be >= 1");
  if (a + b != c) throw std::invalid_argument("abc_quality: a + b must equal c");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g != 1) throw std::invalid_argument("abc_quality: a, b must be coprime");
  std::set<mpz_class> primes;
  for (const mpz_class* part : {&a, &b, &c}) {
    if (*part == 1) continue;
    for (const auto& f : factorize(*part, 80)) primes.insert(f.prime);
  }
  mpz_class rad = 1;
  for (const auto& p : primes) rad *= p;
  double q1 = detail::log_ratio_mpfr(c, rad, 128);
  double q2 = detail::log_ratio_mpfr(c, rad, 192);
  if (std::abs(q1 - q2) > 1e-9)
    throw std::runtime_error("abc_quality: precision guard tripped");
  return {a, b, c, rad, q1};
}

// Upper bound z2 * log(q) / (log 2 + 1.5 log(q)) on the quality a second
// solution would hand the abc conjecture.
inline double eq13_quality_bound(const mpz_class& q_value, unsigned z2) {
  if (q_value < 2) throw std::invalid_argument("eq13_quality_bound: q must be >= 2");
  if (z2 < 3 || z2 % 2 == 0)
    throw std::invalid_argument("eq13_quality_bound: z2 must be odd and >= 3");
  double lq = detail::log_mpfr(q_value, 128);
  return static_cast<double>(z2) * lq / (std::log(2.0) + 1.5 * lq);
}

}  // namespace pexeq
