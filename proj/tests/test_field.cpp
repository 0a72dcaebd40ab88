#include <random>

#include "adaptmul/errors.hpp"
#include "adaptmul/field.hpp"
#include "adaptmul/poly.hpp"
#include "doctest.h"

using namespace adaptmul;

TEST_CASE("field arithmetic over F_97") {
  const Field f = make_field(97);
  CHECK(f.add(50, 60) == 13);
  CHECK(f.sub(3, 5) == 95);
  CHECK(f.neg(0) == 0);
  CHECK(f.neg(1) == 96);
  for (Coeff x = 0; x < 97; ++x) CHECK(f.mul(1, x) == x);
}

TEST_CASE("construction rejects composites and out-of-range moduli") {
  CHECK_THROWS_WITH_AS(make_field(6), doctest::Contains("not prime"), ArgumentError);
  CHECK_THROWS_AS(make_field(0), ArgumentError);
  CHECK_THROWS_AS(make_field(1), ArgumentError);
  CHECK_THROWS_AS(make_field(std::uint64_t{1} << 63), ArgumentError);
  CHECK_NOTHROW(make_field(2));
  CHECK_NOTHROW(make_field(9223372036854775783ULL));  // largest prime below 2^63
}

TEST_CASE("primality test agrees with trial division") {
  auto slow = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  };
  for (std::uint64_t n = 0; n < 20000; ++n) CHECK(is_prime(n) == slow(n));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(is_prime(4294967291ULL));
}

TEST_CASE("field axioms hold exhaustively for small primes") {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    const Field f(p);
    for (Coeff a = 0; a < p; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      for (Coeff b = 0; b < p; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.sub(f.add(a, b), b) == a);
        for (Coeff c = 0; c < p; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("field axioms on random triples for word-size primes") {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {9973ULL, 4294967291ULL, 9223372036854775783ULL}) {
    const Field f(p);
    for (int i = 0; i < 2000; ++i) {
      const Coeff a = rng() % p, b = rng() % p, c = rng() % p;
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.mul(a, b) < p);
      CHECK(f.add(a, b) < p);
    }
  }
}

TEST_CASE("counted fields tally their own operations") {
  const Field base = make_field(97);
  const Field c = counted(base);
  CHECK(c.counts().mul_count == 0);
  CHECK(c.counts().add_count == 0);
  CHECK(c.mul(3, 4) == base.mul(3, 4));
  CHECK(c.counts().mul_count == 1);
  c.add(1, 2);
  c.sub(1, 2);
  c.neg(5);
  CHECK(c.counts().add_count == 3);

  const Field copy = c;
  copy.mul(2, 2);
  CHECK(c.counts().mul_count == 2);

  const Field other = counted(base);
  CHECK(other.counts().mul_count == 0);
  c.reset_counts();
  CHECK(c.counts().mul_count == 0);
  CHECK_FALSE(base.is_counted());
  CHECK(base.counts().mul_count == 0);
}

TEST_CASE("schoolbook product of two linear polynomials costs four multiplications") {
  const Field c = counted(make_field(97));
  CostModel model;
  model.kind = ModelKind::schoolbook;
  dense_mul(DensePoly({1, 2}), DensePoly({3, 4}), c, model);
  CHECK(c.counts().mul_count == 4);
}
