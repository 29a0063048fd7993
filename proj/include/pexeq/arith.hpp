#pragma once

// Modular arithmetic over odd prime moduli: valuations, orders, discrete
// logarithms ("indices"), power residues and binary quadratic form
// representations. Everything an analysis of p^x + q^y = z^2-style
// congruence conditions needs.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pexeq {

// Thrown when a factorization leaves a composite cofactor beyond the
// supported envelope (trial division to 1e6, then Pollard rho up to a
// caller-chosen bit cap).
class factorization_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Strong probable-prime test to base a. Requires n odd, n > a + 1.
inline bool mr_composite_witness(uint64_t n, uint64_t a) {
  uint64_t d = n - 1;
  int s = __builtin_ctzll(d);
  d >>= s;
  uint64_t x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Deterministic below 2^64 with the first twelve prime bases
// (Sorenson and Webster, Math. Comp. 86 (2017)).
inline bool is_prime_u64(uint64_t n) {
  constexpr uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (uint64_t p : bases) {
    if (n % p == 0) return n == p;
  }
  for (uint64_t a : bases) {
    if (mr_composite_witness(n, a)) return false;
  }
  return true;
}

}  // namespace detail

// Deterministic below 2^64, Baillie-PSW plus `rounds` Miller-Rabin rounds
// above (GMP's mpz_probab_prime_p).
inline bool is_prime(const mpz_class& n, int rounds = 30) {
  if (n < 2) return false;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64)
    return detail::is_prime_u64(mpz_get_ui(n.get_mpz_t()));
  return mpz_probab_prime_p(n.get_mpz_t(), rounds) != 0;
}

// 2-adic valuation of n >= 1.
inline unsigned long v2(const mpz_class& n) {
  if (n <= 0) throw std::domain_error("v2: argument must be a positive integer");
  return mpz_scan1(n.get_mpz_t(), 0);
}

inline mpz_class mod_pow(const mpz_class& base, const mpz_class& exponent,
                         const mpz_class& modulus) {
  if (modulus < 2) throw std::invalid_argument("mod_pow: modulus must be >= 2");
  if (exponent < 0) throw std::invalid_argument("mod_pow: exponent must be >= 0");
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

struct Factor {
  mpz_class prime;
  unsigned exponent;
};

namespace detail {

// Brent's cycle-finding variant of Pollard rho. n odd composite, coprime
// to small primes. Deterministic: polynomial offsets are tried in order.
inline mpz_class pollard_rho(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1, diff, acc = 1;
    int batch = 0;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      diff = x - y;
      if (diff == 0) break;  // cycle closed without a factor; next c
      acc = (acc * abs(diff)) % n;
      if (++batch == 64) {
        mpz_gcd(d.get_mpz_t(), acc.get_mpz_t(), n.get_mpz_t());
        acc = 1;
        batch = 0;
      }
    }
    if (d == 1 && batch > 0) mpz_gcd(d.get_mpz_t(), acc.get_mpz_t(), n.get_mpz_t());
    if (d > 1 && d < n) return d;
  }
}

}  // namespace detail

// Trial division by all d <= 1e6, then Pollard rho. A composite cofactor
// wider than max_composite_bits raises factorization_error instead of
// stalling; callers treat that as "outside the supported envelope".
inline std::vector<Factor> factorize(mpz_class n, unsigned max_composite_bits = 64) {
  if (n < 1) throw std::invalid_argument("factorize: argument must be >= 1");
  std::map<mpz_class, unsigned> found;
  while (mpz_even_p(n.get_mpz_t())) {
    ++found[2];
    n /= 2;
  }
  for (unsigned long d = 3; d <= 1000000UL; d += 2) {
    if (mpz_class(d) * d > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      ++found[mpz_class(d)];
      n /= d;
    }
  }
  std::vector<mpz_class> pending;
  if (n > 1) pending.push_back(n);
  while (!pending.empty()) {
    mpz_class t = pending.back();
    pending.pop_back();
    if (is_prime(t)) {
      ++found[t];
      continue;
    }
    if (mpz_sizeinbase(t.get_mpz_t(), 2) > max_composite_bits)
      throw factorization_error("factorize: composite cofactor of " +
                                std::to_string(mpz_sizeinbase(t.get_mpz_t(), 2)) +
                                " bits exceeds the " + std::to_string(max_composite_bits) +
                                "-bit cap");
    mpz_class f = detail::pollard_rho(t);
    pending.push_back(f);
    pending.push_back(t / f);
  }
  std::vector<Factor> out;
  out.reserve(found.size());
  for (const auto& [p, e] : found) out.push_back({p, e});
  return out;
}

// An odd prime p bundled with the verified factorization of p - 1,
// which order and index computations need.
class PrimeModulus {
 public:
  static PrimeModulus create(const mpz_class& p, int mr_rounds = 30) {
    if (p < 3 || mpz_even_p(p.get_mpz_t()))
      throw std::invalid_argument("PrimeModulus: p must be an odd prime");
    if (!is_prime(p, mr_rounds))
      throw std::invalid_argument("PrimeModulus: p failed the primality check");
    PrimeModulus pm;
    pm.p_ = p;
    pm.pm1_ = p - 1;
    pm.factors_ = factorize(pm.pm1_);
    mpz_class prod = 1;
    for (const auto& f : pm.factors_)
      for (unsigned i = 0; i < f.exponent; ++i) prod *= f.prime;
    if (prod != pm.pm1_)
      throw std::logic_error("PrimeModulus: factorization does not reassemble");
    return pm;
  }

  const mpz_class& p() const { return p_; }
  const mpz_class& pm1() const { return pm1_; }
  const std::vector<Factor>& pm1_factorization() const { return factors_; }

 private:
  PrimeModulus() = default;
  mpz_class p_, pm1_;
  std::vector<Factor> factors_;
};

namespace detail {

inline mpz_class reduce_nonzero(const mpz_class& n, const PrimeModulus& pm,
                                const char* who) {
  mpz_class r = n % pm.p();
  if (r < 0) r += pm.p();
  if (r == 0)
    throw std::invalid_argument(std::string(who) + ": argument is divisible by p");
  return r;
}

}  // namespace detail

// Least t >= 1 with n^t = 1 (mod p). Starts from p - 1 and strips prime
// factors that keep the power at 1.
inline mpz_class multiplicative_order(const mpz_class& n, const PrimeModulus& pm) {
  mpz_class r = detail::reduce_nonzero(n, pm, "multiplicative_order");
  mpz_class t = pm.pm1();
  for (const auto& f : pm.pm1_factorization()) {
    for (unsigned i = 0; i < f.exponent; ++i) {
      mpz_class cand = t / f.prime;
      if (mod_pow(r, cand, pm.p()) == 1)
        t = cand;
      else
        break;
    }
  }
  return t;
}

inline bool is_primitive_root(const mpz_class& d, const PrimeModulus& pm) {
  mpz_class r = d % pm.p();
  if (r < 0) r += pm.p();
  if (r == 0) return false;
  for (const auto& f : pm.pm1_factorization())
    if (mod_pow(r, pm.pm1() / f.prime, pm.p()) == 1) return false;
  return true;
}

// Smallest primitive root >= 2.
inline mpz_class find_primitive_root(const PrimeModulus& pm) {
  for (mpz_class d = 2;; ++d)
    if (is_primitive_root(d, pm)) return d;
}

// Discrete logarithms are served by baby-step giant-step, so moduli are
// capped: table plus giant steps stay comfortable for p < 2^50.
inline constexpr unsigned kIndexPrimeBits = 50;

// Baby-step giant-step table for a fixed (p, d). Index convention: the
// index of n is the i in (0, p-1] with d^i = n (mod p), so the index of 1
// is p - 1 rather than 0.
class IndexCalculator {
 public:
  IndexCalculator(const PrimeModulus& pm, const mpz_class& root) {
    if (mpz_sizeinbase(pm.p().get_mpz_t(), 2) > kIndexPrimeBits)
      throw std::domain_error("index: p exceeds the 2^50 discrete-log cap");
    if (!is_primitive_root(root, pm))
      throw std::invalid_argument("index: d is not a primitive root mod p");
    p_ = mpz_get_ui(pm.p().get_mpz_t());
    mpz_class r = root % pm.p();
    if (r < 0) r += pm.p();
    root_ = mpz_get_ui(r.get_mpz_t());
    uint64_t order = p_ - 1;
    m_ = static_cast<uint64_t>(std::sqrt(static_cast<double>(order)));
    while (m_ > 1 && (m_ - 1) * (m_ - 1) >= order) --m_;
    while (m_ * m_ < order) ++m_;
    baby_.reserve(m_);
    uint64_t cur = 1;
    for (uint64_t j = 0; j < m_; ++j) {
      baby_.emplace(cur, static_cast<uint32_t>(j));
      cur = detail::mulmod_u64(cur, root_, p_);
    }
    giant_ = detail::powmod_u64(root_, order - (m_ % order), p_);
  }

  uint64_t p() const { return p_; }
  uint64_t root() const { return root_; }

  uint64_t index_of(uint64_t n) const {
    n %= p_;
    if (n == 0) throw std::invalid_argument("index: argument is divisible by p");
    uint64_t order = p_ - 1;
    uint64_t gamma = n;
    for (uint64_t g = 0; g * m_ <= order; ++g) {
      auto it = baby_.find(gamma);
      if (it != baby_.end()) {
        uint64_t i = (g * m_ + it->second) % order;
        return i == 0 ? order : i;
      }
      gamma = detail::mulmod_u64(gamma, giant_, p_);
    }
    throw std::logic_error("index: baby-step giant-step found no hit");
  }

  // w = min(v2(index), v2(p-1)). Independent of the chosen root.
  unsigned long w_of(uint64_t n) const {
    uint64_t i = index_of(n);
    unsigned long vi = __builtin_ctzll(i);
    unsigned long vp = __builtin_ctzll(p_ - 1);
    return vi < vp ? vi : vp;
  }

 private:
  uint64_t p_, root_, m_, giant_;
  std::unordered_map<uint64_t, uint32_t> baby_;
};

// One-shot index query. Builds the table, answers, discards. Loops over
// many n at the same p should hold an IndexCalculator instead.
inline mpz_class index(const mpz_class& n, const PrimeModulus& pm, const mpz_class& d) {
  mpz_class r = detail::reduce_nonzero(n, pm, "index");
  IndexCalculator calc(pm, d);
  return mpz_class(static_cast<unsigned long>(calc.index_of(mpz_get_ui(r.get_mpz_t()))));
}

inline unsigned long w(const mpz_class& n, const PrimeModulus& pm) {
  mpz_class r = detail::reduce_nonzero(n, pm, "w");
  IndexCalculator calc(pm, find_primitive_root(pm));
  return calc.w_of(mpz_get_ui(r.get_mpz_t()));
}

struct IndexProfile {
  mpz_class p;
  mpz_class n;      // reduced residue
  mpz_class root;   // primitive root used
  mpz_class index;  // in (0, p-1]
  unsigned long w;  // min(v2(index), v2(p-1)); root-independent
};

inline IndexProfile index_profile(const mpz_class& n, const PrimeModulus& pm) {
  mpz_class r = detail::reduce_nonzero(n, pm, "index_profile");
  mpz_class d = find_primitive_root(pm);
  IndexCalculator calc(pm, d);
  uint64_t i = calc.index_of(mpz_get_ui(r.get_mpz_t()));
  unsigned long vi = __builtin_ctzll(i);
  unsigned long vp = v2(pm.pm1());
  return {pm.p(), r, d, mpz_class(static_cast<unsigned long>(i)), vi < vp ? vi : vp};
}

// w of the negated residue -a, computed from w(a) and v2(p-1) alone.
// The three regimes come from adding the index of -1, which is (p-1)/2.
inline unsigned long predicted_w_of_negation(unsigned long w_a, unsigned long v2_pm1) {
  if (v2_pm1 < 1)
    throw std::invalid_argument("predicted_w_of_negation: v2(p-1) must be >= 1");
  if (w_a > v2_pm1)
    throw std::invalid_argument("predicted_w_of_negation: w cannot exceed v2(p-1)");
  if (w_a + 1 < v2_pm1) return w_a;
  if (w_a + 1 == v2_pm1) return v2_pm1;
  return v2_pm1 - 1;
}

// Euler's criterion. Returns -1, 0, or 1; a non-prime modulus that slips
// through surfaces as a domain_error.
inline int legendre(const mpz_class& n, const mpz_class& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()))
    throw std::invalid_argument("legendre: p must be an odd prime");
  mpz_class r = n % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  mpz_class e = mod_pow(r, (p - 1) / 2, p);
  if (e == 1) return 1;
  if (e == p - 1) return -1;
  throw std::domain_error("legendre: Euler criterion failed; p is not prime");
}

// n is an e-th power residue mod p iff n^((p-1)/e) = 1. Requires e | p - 1.
inline bool eth_power_residue(const mpz_class& n, const PrimeModulus& pm,
                              const mpz_class& e) {
  if (e < 1) throw std::invalid_argument("eth_power_residue: e must be >= 1");
  if (pm.pm1() % e != 0)
    throw std::invalid_argument("eth_power_residue: e does not divide p - 1");
  mpz_class r = detail::reduce_nonzero(n, pm, "eth_power_residue");
  return mod_pow(r, pm.pm1() / e, pm.p()) == 1;
}

struct FormRepresentation {
  mpz_class p;
  unsigned k;  // 64 or 256
  mpz_class a;
  mpz_class b;  // b >= 1; representations with b = 0 are not searched
};

// Search p = a^2 + k*b^2 over b >= 1. Returns the representation with the
// smallest b, if any.
inline std::optional<FormRepresentation> represent_form(const mpz_class& p, unsigned k) {
  if (k != 64 && k != 256)
    throw std::invalid_argument("represent_form: k must be 64 or 256");
  if (p < 3 || mpz_even_p(p.get_mpz_t()))
    throw std::invalid_argument("represent_form: p must be an odd prime");
  for (mpz_class b = 1; k * b * b < p; ++b) {
    mpz_class t = p - k * b * b;
    if (mpz_perfect_square_p(t.get_mpz_t())) {
      mpz_class a;
      mpz_sqrt(a.get_mpz_t(), t.get_mpz_t());
      return FormRepresentation{p, k, a, b};
    }
  }
  return std::nullopt;
}

inline std::vector<uint64_t> primes_up_to(uint64_t n) {
  if (n > 200000000ULL)
    throw std::invalid_argument("primes_up_to: bound above 2e8 not supported");
  std::vector<bool> comp(n + 1, false);
  std::vector<uint64_t> out;
  for (uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

// True iff n = m^k for some m and k >= 2. Repeated exact root extraction;
// no factorization.
inline bool is_perfect_power(const mpz_class& n) {
  if (n < 2) throw std::invalid_argument("is_perfect_power: argument must be >= 2");
  size_t max_k = mpz_sizeinbase(n.get_mpz_t(), 2);
  mpz_class root;
  for (size_t k = 2; k <= max_k; ++k)
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return true;
  return false;
}

}  // namespace pexeq
