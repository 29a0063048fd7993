#pragma once

// Bounded exhaustive search for a^x + b^y = c^z in positive integers,
// plus two small difference scans used by the verification suites.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pexeq/arith.hpp"

namespace pexeq {

// S: a, b, c pairwise distinct primes with a < b.
// N: gcd(a, b) = 1, b > a > 1, and none of a, b, c a perfect power.
enum class Mode { S, N };

class EquationInstance {
 public:
  static EquationInstance create(const mpz_class& a, const mpz_class& b,
                                 const mpz_class& c, Mode mode) {
    if (a < 2 || b < 2 || c < 2)
      throw std::invalid_argument("EquationInstance: a, b, c must be >= 2");
    if (mode == Mode::S) {
      if (!is_prime(a) || !is_prime(b) || !is_prime(c))
        throw std::invalid_argument("EquationInstance: S mode needs prime a, b, c");
      if (a == b || a == c || b == c)
        throw std::invalid_argument("EquationInstance: S mode needs distinct primes");
      if (a >= b) throw std::invalid_argument("EquationInstance: S mode needs a < b");
    } else {
      if (b <= a) throw std::invalid_argument("EquationInstance: N mode needs b > a > 1");
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      if (g != 1) throw std::invalid_argument("EquationInstance: N mode needs gcd(a, b) = 1");
      if (is_perfect_power(a) || is_perfect_power(b) || is_perfect_power(c))
        throw std::invalid_argument(
            "EquationInstance: N mode excludes perfect powers");
    }
    EquationInstance inst;
    inst.a_ = a;
    inst.b_ = b;
    inst.c_ = c;
    inst.mode_ = mode;
    return inst;
  }

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& c() const { return c_; }
  Mode mode() const { return mode_; }

 private:
  EquationInstance() = default;
  mpz_class a_, b_, c_;
  Mode mode_ = Mode::S;
};

struct SearchBounds {
  uint32_t max_z = 25;
  uint32_t max_bits = 512;  // c^z is not expanded beyond this width
};

struct SolutionTriple {
  uint32_t x, y, z;
  friend auto operator<=>(const SolutionTriple&, const SolutionTriple&) = default;
};

struct SolutionSet {
  mpz_class a, b, c;
  Mode mode;
  SearchBounds bounds;
  std::vector<SolutionTriple> solutions;  // sorted by (z, x)
  bool exhaustive_within_bounds;
};

// Largest y with b^y = r exactly, if any. Repeated exact division; y >= 1.
inline std::optional<uint32_t> is_power_of(const mpz_class& r, const mpz_class& b) {
  if (r < 1) throw std::invalid_argument("is_power_of: r must be >= 1");
  if (b < 2) throw std::invalid_argument("is_power_of: b must be >= 2");
  mpz_class t = r;
  uint32_t y = 0;
  while (mpz_divisible_p(t.get_mpz_t(), b.get_mpz_t())) {
    t /= b;
    ++y;
  }
  if (t == 1 && y >= 1) return y;
  return std::nullopt;
}

// z outer, x inner; the b-part is recovered as c^z - a^x and tested by
// exact division. Every hit is re-verified from scratch before it is kept.
inline SolutionSet find_solutions(const EquationInstance& inst, const SearchBounds& bounds) {
  SolutionSet out{inst.a(), inst.b(), inst.c(), inst.mode(), bounds, {}, true};
  mpz_class cz = 1;
  for (uint32_t z = 1; z <= bounds.max_z; ++z) {
    cz *= inst.c();
    if (mpz_sizeinbase(cz.get_mpz_t(), 2) > bounds.max_bits) break;
    mpz_class ax = inst.a();
    for (uint32_t x = 1; ax < cz; ++x, ax *= inst.a()) {
      mpz_class r = cz - ax;
      auto y = is_power_of(r, inst.b());
      if (!y) continue;
      mpz_class check_a, check_b, check_c;
      mpz_pow_ui(check_a.get_mpz_t(), inst.a().get_mpz_t(), x);
      mpz_pow_ui(check_b.get_mpz_t(), inst.b().get_mpz_t(), *y);
      mpz_pow_ui(check_c.get_mpz_t(), inst.c().get_mpz_t(), z);
      if (check_a + check_b != check_c)
        throw std::logic_error("find_solutions: verification failed");
      out.solutions.push_back({x, *y, z});
    }
  }
  return out;
}

inline size_t count_solutions(const EquationInstance& inst, const SearchBounds& bounds) {
  return find_solutions(inst, bounds).solutions.size();
}

// Number of (m, n) in [1, m_max] x [1, n_max] with q^n - p^m = 2^k.
inline uint64_t lemma21_scan(const mpz_class& p, const mpz_class& q, unsigned k,
                             unsigned m_max, unsigned n_max) {
  if (!is_prime(p) || !is_prime(q) || p == 2 || q == 2 || p == q)
    throw std::invalid_argument("lemma21_scan: p, q must be distinct odd primes");
  if (k < 1 || m_max < 1 || n_max < 1)
    throw std::invalid_argument("lemma21_scan: k, m_max, n_max must be >= 1");
  mpz_class two_k = mpz_class(1) << k;
  uint64_t count = 0;
  mpz_class qn = 1;
  for (unsigned n = 1; n <= n_max; ++n) {
    qn *= q;
    mpz_class t = qn - two_k;
    if (t < p) continue;
    auto m = is_power_of(t, p);
    if (m && *m <= m_max) ++count;
  }
  return count;
}

// Number of (z, y) in [1, z_max] x [1, y_max] with
// 0 < |c^z - b^y| and 16 (c^z - b^y)^2 < max(c^z, b^y).
// The inequality is the integer form of |c^z - b^y| < max(...)^(1/2) / 4.
inline uint64_t lemma22_scan(const mpz_class& b, const mpz_class& c, unsigned y_max,
                             unsigned z_max) {
  if (b < 2 || c < 2) throw std::invalid_argument("lemma22_scan: b, c must be >= 2");
  if (b == c) throw std::invalid_argument("lemma22_scan: b and c must differ");
  if (y_max < 1 || z_max < 1)
    throw std::invalid_argument("lemma22_scan: bounds must be >= 1");
  std::vector<mpz_class> by(y_max + 1);
  by[0] = 1;
  for (unsigned y = 1; y <= y_max; ++y) by[y] = by[y - 1] * b;
  uint64_t count = 0;
  mpz_class cz = 1;
  for (unsigned z = 1; z <= z_max; ++z) {
    cz *= c;
    for (unsigned y = 1; y <= y_max; ++y) {
      mpz_class diff = cz - by[y];
      if (diff == 0) continue;
      mpz_class lhs = 16 * diff * diff;
      const mpz_class& rhs = cz > by[y] ? cz : by[y];
      if (lhs < rhs) ++count;
    }
  }
  return count;
}

}  // namespace pexeq
