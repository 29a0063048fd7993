#pragma once

// Periodic continued fractions of sqrt(D), their convergents P_m/Q_m, the
// signed norms k_m = (-1)^(m+1) (P_m^2 - Q_m^2 D), and Pell equations
// x^2 - D y^2 = +-1. Includes the closed-form family D = p^(2n) + 4.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "pexeq/arith.hpp"

namespace pexeq {

struct SurdExpansion {
  mpz_class D;
  mpz_class a0;                   // floor(sqrt(D))
  std::vector<mpz_class> period;  // minimal period a_1 .. a_s
};

// Integer recurrence on complete quotients (m + sqrt(D)) / d. The period
// closes when the (m, d) state first repeats.
inline SurdExpansion sqrt_cf(const mpz_class& D) {
  if (D < 2) throw std::invalid_argument("sqrt_cf: D must be >= 2");
  if (mpz_perfect_square_p(D.get_mpz_t()))
    throw std::invalid_argument("sqrt_cf: D must not be a perfect square");
  mpz_class a0;
  mpz_sqrt(a0.get_mpz_t(), D.get_mpz_t());
  SurdExpansion out{D, a0, {}};
  mpz_class m = a0, d = D - a0 * a0;
  const mpz_class first_m = m, first_d = d;
  do {
    mpz_class a = (a0 + m) / d;
    out.period.push_back(a);
    m = a * d - m;
    d = (D - m * m) / d;
  } while (m != first_m || d != first_d);
  return out;
}

struct Convergent {
  uint64_t m;   // position, 0-based
  mpz_class P;  // numerator
  mpz_class Q;  // denominator
  mpz_class k;  // (-1)^(m+1) (P^2 - Q^2 D), always positive
};

inline std::vector<Convergent> convergents(const mpz_class& D, size_t count) {
  SurdExpansion e = sqrt_cf(D);
  const size_t s = e.period.size();
  std::vector<Convergent> out;
  out.reserve(count);
  mpz_class p_prev = 1, p_prev2 = 0;  // P_{-1}, P_{-2}
  mpz_class q_prev = 0, q_prev2 = 1;  // Q_{-1}, Q_{-2}
  for (size_t j = 0; j < count; ++j) {
    const mpz_class& a = (j == 0) ? e.a0 : e.period[(j - 1) % s];
    mpz_class P = a * p_prev + p_prev2;
    mpz_class Q = a * q_prev + q_prev2;
    mpz_class t = P * P - Q * Q * D;
    mpz_class k = (j % 2 == 0) ? mpz_class(-t) : t;
    if (k <= 0) throw std::logic_error("convergents: norm lost its sign pattern");
    out.push_back({j, P, Q, k});
    p_prev2 = p_prev;
    p_prev = P;
    q_prev2 = q_prev;
    q_prev = Q;
  }
  return out;
}

// k_{ns+j} = k_j for 1 <= n <= n_periods, 0 <= j < s.
inline bool k_periodicity_check(const mpz_class& D, unsigned n_periods) {
  if (n_periods < 1)
    throw std::invalid_argument("k_periodicity_check: n_periods must be >= 1");
  SurdExpansion e = sqrt_cf(D);
  const size_t s = e.period.size();
  auto conv = convergents(D, s * (n_periods + 1));
  for (size_t n = 1; n <= n_periods; ++n)
    for (size_t j = 0; j < s; ++j)
      if (conv[n * s + j].k != conv[j].k) return false;
  return true;
}

struct Lemma35Family {
  mpz_class p;
  unsigned n;
  mpz_class pn;  // p^n
  mpz_class D;   // p^(2n) + 4
  SurdExpansion expansion;
  std::array<Convergent, 5> convergents;  // positions 0..4; k = 4, p^n, p^n, 4, 1
};

// Closed form for D = p^(2n) + 4, p odd and >= 3:
//   sqrt(D) = [p^n; (p^n-1)/2, 1, 1, (p^n-1)/2, 2p^n]
// with the five leading convergents listed explicitly.
inline Lemma35Family lemma35_expected(const mpz_class& p, unsigned n) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()))
    throw std::invalid_argument("lemma35_expected: p must be odd and >= 3");
  if (n < 1) throw std::invalid_argument("lemma35_expected: n must be >= 1");
  Lemma35Family fam;
  fam.p = p;
  fam.n = n;
  mpz_pow_ui(fam.pn.get_mpz_t(), p.get_mpz_t(), n);
  const mpz_class& pn = fam.pn;
  fam.D = pn * pn + 4;
  mpz_class half = (pn - 1) / 2;
  fam.expansion.D = fam.D;
  fam.expansion.a0 = pn;
  fam.expansion.period = {half, 1, 1, half, 2 * pn};
  mpz_class pn2 = pn * pn;
  fam.convergents = {
      Convergent{0, pn, 1, 4},
      Convergent{1, (pn2 - pn + 2) / 2, half, pn},
      Convergent{2, (pn2 + pn + 2) / 2, (pn + 1) / 2, pn},
      Convergent{3, pn2 + 2, pn, 4},
      Convergent{4, pn * (pn2 + 3) / 2, (pn2 + 1) / 2, 1},
  };
  return fam;
}

// Closed form against direct expansion: same period, same five leading
// convergents, and the k-values (4, p^n, p^n, 4, 1).
inline bool lemma35_matches(const Lemma35Family& fam, const SurdExpansion& direct,
                            const std::vector<Convergent>& direct_conv) {
  if (fam.expansion.a0 != direct.a0 || fam.expansion.period != direct.period)
    return false;
  if (direct_conv.size() < 5) return false;
  const mpz_class k_expected[5] = {4, fam.pn, fam.pn, 4, 1};
  for (size_t j = 0; j < 5; ++j) {
    const Convergent &e = fam.convergents[j], &g = direct_conv[j];
    if (e.P != g.P || e.Q != g.Q || e.k != g.k) return false;
    if (e.k != k_expected[j]) return false;
  }
  return true;
}

struct PellSolution {
  mpz_class D;
  mpz_class h;  // x
  mpz_class k;  // y
  int norm;     // +1 or -1
};

// Fundamental solution of h^2 - D k^2 = norm. The negative equation is
// solvable iff the period length s is odd, in which case (P_{s-1}, Q_{s-1})
// solves it; the positive fundamental is that solution squared. For even s,
// (P_{s-1}, Q_{s-1}) already has norm +1.
inline std::optional<PellSolution> pell_fundamental(const mpz_class& D, int norm) {
  if (norm != 1 && norm != -1)
    throw std::invalid_argument("pell_fundamental: norm must be +1 or -1");
  SurdExpansion e = sqrt_cf(D);
  const size_t s = e.period.size();
  auto conv = convergents(D, s);
  const mpz_class& P = conv[s - 1].P;
  const mpz_class& Q = conv[s - 1].Q;
  PellSolution out;
  out.D = D;
  out.norm = norm;
  if (s % 2 == 1) {
    if (norm == -1) {
      out.h = P;
      out.k = Q;
    } else {
      out.h = P * P + D * Q * Q;
      out.k = 2 * P * Q;
    }
  } else {
    if (norm == -1) return std::nullopt;
    out.h = P;
    out.k = Q;
  }
  if (out.h * out.h - D * out.k * out.k != norm)
    throw std::logic_error("pell_fundamental: solution failed verification");
  return out;
}

// Power iteration on the positive Pell fundamental (U_i + V_i sqrt(D)) =
// (U_1 + V_1 sqrt(D))^i. Checks that every prime factor of h_1, the
// negative fundamental's x, divides each V_i. Prime factors are stripped
// with gcds, so h_1 itself is never factored.
inline bool lemma32_check(const mpz_class& D, unsigned n_powers) {
  if (n_powers < 1) throw std::invalid_argument("lemma32_check: n_powers must be >= 1");
  auto neg = pell_fundamental(D, -1);
  if (!neg)
    throw std::invalid_argument("lemma32_check: x^2 - D y^2 = -1 is not solvable");
  auto pos = pell_fundamental(D, 1);
  const mpz_class h1 = neg->h;
  const mpz_class U1 = pos->h, V1 = pos->k;
  mpz_class U = U1, V = V1;
  for (unsigned i = 1; i <= n_powers; ++i) {
    mpz_class rem = h1, g;
    for (;;) {
      mpz_gcd(g.get_mpz_t(), rem.get_mpz_t(), V.get_mpz_t());
      if (g == 1) break;
      rem /= g;
    }
    if (rem != 1) return false;
    mpz_class Unext = U * U1 + D * V * V1;
    mpz_class Vnext = U * V1 + V * U1;
    U = Unext;
    V = Vnext;
  }
  return true;
}

// Every primitive x/y with |x^2 - y^2 D| <= floor(sqrt(D)) must be a
// convergent, so the small norm must appear among k_0 .. k_{s-1}. Scans
// y up to y_bound; x only needs to straddle y*sqrt(D).
inline bool small_norm_classification(const mpz_class& D, uint64_t y_bound) {
  if (y_bound < 1)
    throw std::invalid_argument("small_norm_classification: y_bound must be >= 1");
  SurdExpansion e = sqrt_cf(D);
  const size_t s = e.period.size();
  auto conv = convergents(D, s);
  std::set<mpz_class> k_values;
  for (const auto& c : conv) k_values.insert(c.k);
  const mpz_class& a0 = e.a0;
  for (mpz_class y = 1; y <= static_cast<long>(y_bound); ++y) {
    mpz_class y2D = y * y * D;
    mpz_class x0;
    mpz_sqrt(x0.get_mpz_t(), y2D.get_mpz_t());
    for (int off = -1; off <= 1; ++off) {
      mpz_class x = x0 + off;
      if (x < 1) continue;
      mpz_class t = x * x - y2D;
      mpz_class v = abs(t);
      if (v == 0 || v > a0) continue;
      mpz_class g;
      mpz_class yD = y * D;
      mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), yD.get_mpz_t());
      if (g != 1) continue;
      if (k_values.find(v) == k_values.end()) return false;
    }
  }
  return true;
}

}  // namespace pexeq
