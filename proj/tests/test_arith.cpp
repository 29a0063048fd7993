#include "pexeq/arith.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace pexeq;

TEST_CASE("v2 valuation", "[arith]") {
  CHECK(v2(1) == 0);
  CHECK(v2(48) == 4);
  mpz_class big = 1;
  big <<= 87;
  CHECK(v2(big) == 87);
  CHECK(v2(big * 3) == 87);
  CHECK_THROWS_AS(v2(0), std::domain_error);
  CHECK_THROWS_AS(v2(-8), std::domain_error);
  for (uint64_t n = 1; n < 3000; ++n) CHECK(v2(mpz_class(n)) == oracle::naive_v2(n));
}

TEST_CASE("mod_pow", "[arith]") {
  CHECK(mod_pow(2, 9, 73) == 1);
  CHECK(mod_pow(3, 8, 17) == 16);
  CHECK(mod_pow(5, 0, 11) == 1);
  CHECK(mod_pow(-2, 3, 7) == 6);  // normalized into [0, mod)
  CHECK_THROWS_AS(mod_pow(2, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(mod_pow(2, -1, 7), std::invalid_argument);
  for (uint64_t b = 0; b < 30; ++b)
    for (uint64_t e = 0; e < 20; ++e)
      for (uint64_t m : {2ULL, 7ULL, 97ULL, 1000003ULL})
        CHECK(mod_pow(b, e, m) == oracle::powmod(b, e, m));
}

TEST_CASE("primality", "[arith]") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(-7));
  CHECK_FALSE(is_prime(561));   // Carmichael
  CHECK_FALSE(is_prime(mpz_class(3215031751UL)));  // strong pseudoprime to bases 2,3,5,7
  CHECK(is_prime(mpz_class("18446744073709551557")));  // largest prime below 2^64
  CHECK_FALSE(is_prime(mpz_class("18446744073709551617")));  // 2^64+1 = 274177 * 67280421310721
  CHECK(is_prime(mpz_class("1000000000000000009")));
  CHECK(is_prime(mpz_class("170141183460469231731687303715884105727")));  // 2^127-1
  for (uint64_t n = 0; n < 2000; ++n) CHECK(is_prime(mpz_class(n)) == oracle::naive_is_prime(n));
}

TEST_CASE("factorize", "[arith]") {
  CHECK(factorize(1).empty());

  auto f = factorize(720);  // 2^4 * 3^2 * 5
  REQUIRE(f.size() == 3);
  CHECK(f[0].prime == 2);
  CHECK(f[0].exponent == 4);
  CHECK(f[1].prime == 3);
  CHECK(f[1].exponent == 2);
  CHECK(f[2].prime == 5);
  CHECK(f[2].exponent == 1);

  mpz_class p1, p2, two35 = mpz_class(1) << 35;
  mpz_nextprime(p1.get_mpz_t(), two35.get_mpz_t());
  mpz_nextprime(p2.get_mpz_t(), p1.get_mpz_t());
  mpz_class semi = p1 * p2;  // ~71 bits, both factors beyond trial range

  CHECK_THROWS_AS(factorize(semi, 64), factorization_error);

  auto g = factorize(semi, 80);  // Pollard rho splits it
  REQUIRE(g.size() == 2);
  CHECK(g[0].prime == p1);
  CHECK(g[1].prime == p2);

  // reassembly spot check on mixed sizes
  for (const mpz_class& n :
       {mpz_class(1048576), mpz_class(mpz_class(999983) * 999979),
        mpz_class("123456789012345678")}) {
    mpz_class prod = 1;
    for (const auto& fac : factorize(n)) {
      CHECK(is_prime(fac.prime));
      for (unsigned i = 0; i < fac.exponent; ++i) prod *= fac.prime;
    }
    CHECK(prod == n);
  }
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("PrimeModulus", "[arith]") {
  auto pm = PrimeModulus::create(17);
  CHECK(pm.p() == 17);
  CHECK(pm.pm1() == 16);
  REQUIRE(pm.pm1_factorization().size() == 1);
  CHECK(pm.pm1_factorization()[0].prime == 2);
  CHECK(pm.pm1_factorization()[0].exponent == 4);

  CHECK_THROWS_AS(PrimeModulus::create(15), std::invalid_argument);
  CHECK_THROWS_AS(PrimeModulus::create(2), std::invalid_argument);
  CHECK_THROWS_AS(PrimeModulus::create(1), std::invalid_argument);
}

TEST_CASE("multiplicative_order", "[arith]") {
  auto pm7 = PrimeModulus::create(7);
  CHECK(multiplicative_order(1, pm7) == 1);
  CHECK(multiplicative_order(2, pm7) == 3);
  auto pm17 = PrimeModulus::create(17);
  CHECK(multiplicative_order(3, pm17) == 16);
  CHECK_THROWS_AS(multiplicative_order(0, pm7), std::invalid_argument);
  CHECK_THROWS_AS(multiplicative_order(34, pm17), std::invalid_argument);

  for (uint64_t p : oracle::odd_primes_below(200)) {
    auto pm = PrimeModulus::create(p);
    for (uint64_t n = 1; n < p; ++n) {
      mpz_class t = multiplicative_order(n, pm);
      CHECK(t == oracle::naive_order(n, p));
      CHECK(pm.pm1() % t == 0);
    }
  }
}

TEST_CASE("primitive roots", "[arith]") {
  CHECK(find_primitive_root(PrimeModulus::create(3)) == 2);
  CHECK(find_primitive_root(PrimeModulus::create(7)) == 3);
  CHECK(find_primitive_root(PrimeModulus::create(17)) == 3);

  for (uint64_t p : oracle::odd_primes_below(200)) {
    auto pm = PrimeModulus::create(p);
    mpz_class d = find_primitive_root(pm);
    // smallest generator: its order is p-1 and nothing below it generates
    CHECK(oracle::naive_order(mpz_get_ui(d.get_mpz_t()), p) == p - 1);
    for (uint64_t c = 2; c < mpz_get_ui(d.get_mpz_t()); ++c)
      CHECK(oracle::naive_order(c, p) != p - 1);
  }
}

TEST_CASE("index", "[arith]") {
  auto pm17 = PrimeModulus::create(17);
  CHECK(index(2, pm17, 3) == 14);
  CHECK(index(1, pm17, 3) == 16);  // index of 1 is p-1, never 0
  CHECK(index(3, pm17, 3) == 1);
  CHECK_THROWS_AS(index(2, pm17, 2), std::invalid_argument);  // 2 is not primitive mod 17
  CHECK_THROWS_AS(index(17, pm17, 3), std::invalid_argument);

  for (uint64_t p : oracle::odd_primes_below(200)) {
    auto pm = PrimeModulus::create(p);
    uint64_t d = mpz_get_ui(find_primitive_root(pm).get_mpz_t());
    IndexCalculator calc(pm, d);
    for (uint64_t n = 1; n < p; ++n) {
      uint64_t i = calc.index_of(n);
      CHECK(i >= 1);
      CHECK(i <= p - 1);
      CHECK(i == oracle::naive_index(n, p, d));
      CHECK(oracle::powmod(d, i, p) == n);
    }
  }

  // cap: BSGS is refused above 2^50
  mpz_class big = mpz_class(1) << 50, pbig;
  mpz_nextprime(pbig.get_mpz_t(), big.get_mpz_t());
  auto pm_big = PrimeModulus::create(pbig);
  CHECK_THROWS_AS(index(2, pm_big, find_primitive_root(pm_big)), std::domain_error);

  // a moderate modulus exercises the giant steps
  auto pm9 = PrimeModulus::create(1000000007);
  mpz_class d9 = find_primitive_root(pm9);
  mpz_class i9 = index(123456789, pm9, d9);
  CHECK(mod_pow(d9, i9, 1000000007) == 123456789);
}

TEST_CASE("w invariant", "[arith]") {
  auto pm17 = PrimeModulus::create(17);
  CHECK(w(3, pm17) == 0);
  CHECK(w(2, pm17) == 1);
  CHECK(w(16, pm17) == 3);
  CHECK(w(1, pm17) == 4);  // index 16, v2 = 4 = v2(p-1)

  // root independence: w agrees across every primitive root
  for (uint64_t p : {5ULL, 13ULL, 17ULL, 41ULL, 97ULL}) {
    auto pm = PrimeModulus::create(p);
    std::vector<uint64_t> roots;
    for (uint64_t d = 2; d < p; ++d)
      if (is_primitive_root(d, pm)) roots.push_back(d);
    for (uint64_t n = 1; n < p; ++n) {
      uint64_t expect = oracle::naive_w(n, p, roots[0]);
      CHECK(w(n, pm) == expect);
      for (uint64_t d : roots) CHECK(oracle::naive_w(n, p, d) == expect);
    }
  }

  auto prof = index_profile(2, pm17);
  CHECK(prof.p == 17);
  CHECK(prof.n == 2);
  CHECK(prof.root == 3);
  CHECK(prof.index == 14);
  CHECK(prof.w == 1);
}

TEST_CASE("predicted_w_of_negation", "[arith]") {
  CHECK(predicted_w_of_negation(0, 4) == 0);
  CHECK(predicted_w_of_negation(2, 4) == 2);
  CHECK(predicted_w_of_negation(3, 4) == 4);
  CHECK(predicted_w_of_negation(4, 4) == 3);
  CHECK_THROWS_AS(predicted_w_of_negation(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(predicted_w_of_negation(0, 0), std::invalid_argument);

  // matches a direct computation of w(-a) at several primes
  for (uint64_t p : {3ULL, 5ULL, 17ULL, 41ULL, 113ULL, 193ULL}) {
    auto pm = PrimeModulus::create(p);
    unsigned long vp = v2(p - 1);
    for (uint64_t a = 1; a < p; ++a)
      CHECK(w(p - a, pm) == predicted_w_of_negation(w(a, pm), vp));
  }
}

TEST_CASE("legendre", "[arith]") {
  CHECK(legendre(4, 7) == 1);
  CHECK(legendre(2, 73) == 1);
  CHECK(legendre(2, 5) == -1);
  CHECK(legendre(21, 7) == 0);
  CHECK_THROWS_AS(legendre(2, 8), std::invalid_argument);

  for (uint64_t p : oracle::odd_primes_below(200)) {
    for (uint64_t n = 0; n < p; ++n) {
      int expect;
      if (n == 0)
        expect = 0;
      else
        expect = oracle::naive_eth_residue(n, p, 2) ? 1 : -1;
      CHECK(legendre(n, p) == expect);
      mpz_class nn = n, pp = p;
      CHECK(legendre(n, p) == mpz_legendre(nn.get_mpz_t(), pp.get_mpz_t()));
    }
  }
}

TEST_CASE("eth_power_residue", "[arith]") {
  CHECK(eth_power_residue(2, PrimeModulus::create(257), 8));
  CHECK_FALSE(eth_power_residue(2, PrimeModulus::create(97), 8));
  CHECK(eth_power_residue(5, PrimeModulus::create(97), 1));
  CHECK_THROWS_AS(eth_power_residue(2, PrimeModulus::create(7), 8), std::invalid_argument);
  CHECK_THROWS_AS(eth_power_residue(97, PrimeModulus::create(97), 8), std::invalid_argument);
  CHECK_THROWS_AS(eth_power_residue(2, PrimeModulus::create(17), 0), std::invalid_argument);

  for (uint64_t p : oracle::odd_primes_below(200)) {
    auto pm = PrimeModulus::create(p);
    for (uint64_t e : {2ULL, 3ULL, 4ULL, 8ULL}) {
      if ((p - 1) % e != 0) continue;
      for (uint64_t n = 1; n < p; ++n)
        CHECK(eth_power_residue(n, pm, e) == oracle::naive_eth_residue(n, p, e));
    }
  }
}

TEST_CASE("represent_form", "[arith]") {
  auto r = represent_form(73, 64);
  REQUIRE(r.has_value());
  CHECK(r->a == 3);
  CHECK(r->b == 1);

  auto s = represent_form(257, 256);
  REQUIRE(s.has_value());
  CHECK(s->a == 1);
  CHECK(s->b == 1);

  CHECK_FALSE(represent_form(41, 64).has_value());
  CHECK_THROWS_AS(represent_form(73, 32), std::invalid_argument);
  CHECK_THROWS_AS(represent_form(64, 64), std::invalid_argument);

  for (uint64_t p : primes_up_to(2000)) {
    if (p == 2) continue;
    for (unsigned k : {64u, 256u}) {
      auto mine = represent_form(p, k);
      auto ref = oracle::naive_form(p, k);
      REQUIRE(mine.has_value() == ref.has_value());
      if (mine) {
        CHECK(mine->a == ref->first);
        CHECK(mine->b == ref->second);
        CHECK(mine->a * mine->a + k * mine->b * mine->b == p);
      }
    }
  }
}

TEST_CASE("primes_up_to", "[arith]") {
  auto ps = primes_up_to(100);
  REQUIRE(ps.size() == 25);
  CHECK(ps.front() == 2);
  CHECK(ps.back() == 97);
  for (uint64_t p : ps) CHECK(oracle::naive_is_prime(p));
  CHECK(primes_up_to(1).empty());
}

TEST_CASE("is_perfect_power", "[arith]") {
  CHECK(is_perfect_power(8));
  CHECK(is_perfect_power(9));
  CHECK(is_perfect_power(8281));  // 91^2
  CHECK(is_perfect_power(1024));
  CHECK_FALSE(is_perfect_power(6));
  CHECK_FALSE(is_perfect_power(2200));
  CHECK_FALSE(is_perfect_power(2));
  CHECK_THROWS_AS(is_perfect_power(1), std::invalid_argument);

  for (uint64_t n = 2; n < 3000; ++n) {
    bool expect = false;
    for (uint64_t m = 2; m * m <= n && !expect; ++m)
      for (uint64_t acc = m * m; acc <= n; acc *= m)
        if (acc == n) {
          expect = true;
          break;
        }
    CHECK(is_perfect_power(mpz_class(n)) == expect);
  }
}
