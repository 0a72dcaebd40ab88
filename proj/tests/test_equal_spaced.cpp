#include <random>
#include <set>

#include "adaptmul/equal_spaced.hpp"
#include "adaptmul/errors.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace adaptmul;

namespace {

const Field F97 = make_field(97);

DensePoly from_exponents(const std::vector<Exponent>& e, std::mt19937_64* rng = nullptr) {
  std::vector<Coeff> c(e.back() + 1, 0);
  for (Exponent x : e) c[x] = rng ? 1 + (*rng)() % 96 : 1;
  return DensePoly(std::move(c));
}

EqualSpacedPoly es(std::vector<Coeff> core, std::uint64_t k, Exponent d, std::vector<Term> noise = {}) {
  return {DensePoly(std::move(core)), k, d, SparsePoly(std::move(noise))};
}

// Exponents mostly on one progression with a few strays.
std::vector<Exponent> spaced_set(std::mt19937_64& rng, std::size_t t, Exponent n) {
  const std::uint64_t k = 2 + rng() % std::max<Exponent>(1, n / (t + 1));
  const Exponent d = rng() % k;
  std::set<Exponent> e;
  std::size_t strays = rng() % 4 == 0 ? t / 2 : rng() % 8;
  const std::size_t slots = (n - d) / k + 1;
  strays = std::min(std::max(strays, t - std::min(t, slots)), t - 1);
  while (e.size() < t - strays) {
    const Exponent x = d + k * (rng() % ((n - d) / k + 1));
    if (x <= n) e.insert(x);
  }
  while (e.size() < t) e.insert(rng() % (n + 1));
  return {e.begin(), e.end()};
}

}  // namespace

TEST_CASE("k bound") {
  CHECK(k_bound(32, 310) == 14);
  CHECK(k_bound(5, 20) == 20);
  CHECK(k_bound(1024, 1024) == 1);
  CHECK(k_bound(31, 77) == 77);
  CHECK_THROWS_AS(k_bound(0, 5), ArgumentError);
}

TEST_CASE("log2 comparison is exact") {
  CHECK(within_log2(0, 1));
  CHECK(within_log2(2, 4));
  CHECK_FALSE(within_log2(3, 7));
  CHECK(within_log2(3, 8));
  CHECK_FALSE(within_log2(64, ~std::size_t{0}));
}

TEST_CASE("conversion examples") {
  const EqualSpacedPoly two = es_convert(from_exponents({0, 100}));
  CHECK(two.spacing == 100);
  CHECK(two.shift == 0);
  CHECK(two.noise.is_zero());
  CHECK(two.core == DensePoly({1, 1}));

  const EqualSpacedPoly five = es_convert(from_exponents({0, 5, 10, 15, 20}));
  CHECK(five.spacing == 10);
  CHECK(five.shift == 0);
  CHECK(five.noise == SparsePoly({{1, 5}, {1, 15}}));

  const EqualSpacedPoly shifted = es_convert(from_exponents({2, 9, 16, 23, 30}));
  CHECK(shifted.spacing == 14);
  CHECK(shifted.shift == 2);
  CHECK(shifted.noise == SparsePoly({{1, 9}, {1, 23}}));
  CHECK(shifted.core == DensePoly({1, 1, 1}));

  const EqualSpacedPoly mono = es_convert(from_exponents({7}));
  CHECK(mono.spacing == 7);
  CHECK(mono.shift == 7);
  CHECK(mono.core == DensePoly({1}));
  CHECK(es_convert(DensePoly({3})).spacing == 1);

  CHECK_THROWS_AS(es_convert(DensePoly{}), ArgumentError);
}

TEST_CASE("reconstruction") {
  CHECK(es_to_dense(es({1, 1}, 5, 3)) == to_dense(SparsePoly({{1, 3}, {1, 8}})));
  CHECK(es_to_dense(es({4, 0, 2}, 1, 0)) == DensePoly({4, 0, 2}));
  CHECK_THROWS_AS(es_to_dense(es({1, 1}, 5, 3), 8), CapacityError);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto e = i % 2 ? spaced_set(rng, 3 + rng() % 80, 200 + rng() % 3000)
                         : std::vector<Exponent>{rng() % 5, 5 + rng() % 50};
    const DensePoly f = from_exponents(e, &rng);
    const EqualSpacedPoly r = es_convert(f);
    CHECK_NOTHROW(validate(r));
    CHECK(es_to_dense(r) == f);
  }
}

TEST_CASE("validation rejects broken representations") {
  CHECK_THROWS_AS(validate(es({0, 1}, 2, 0)), ArgumentError);
  CHECK_THROWS_AS(validate(es({1, 1}, 2, 1, {{1, 3}})), ArgumentError);
  CHECK_THROWS_AS(validate(es({1}, 0, 0)), ArgumentError);
  CHECK_NOTHROW(validate(es({1, 1}, 2, 1, {{1, 4}})));
}

TEST_CASE("the returned spacing is the largest admissible one") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 150; ++i) {
    const std::size_t t = 5 + rng() % 196;
    const Exponent n = std::max<Exponent>(t + 2, rng() % 10001);
    std::vector<Exponent> e;
    if (i % 3 == 0) {
      std::set<Exponent> s;
      while (s.size() < t) s.insert(rng() % (n + 1));
      e.assign(s.begin(), s.end());
    } else {
      e = spaced_set(rng, t, n);
    }
    const EqualSpacedPoly r = es_convert(from_exponents(e));
    INFO("t=", t, " n=", e.back());
    CHECK(r.spacing == oracle::brute_force_spacing(e));
    CHECK(within_log2(r.noise.term_count(), t));
    if (r.spacing == 1) {
      CHECK(r.noise.is_zero());
      CHECK(r.shift == e.front());
    }
  }
}

TEST_CASE("spaced multiplication examples") {
  const CostModel m;
  CHECK(es_mul(es({1, 1, 1}, 2, 0), es({1, 1}, 3, 0), F97, m) == DensePoly({1, 0, 1, 1, 1, 1, 0, 1}));
  EsMulStats stats;
  CHECK(es_mul(es({1, 1}, 2, 0), es({1, 1}, 2, 0), F97, m, &stats) == DensePoly({1, 0, 2, 0, 1}));
  CHECK(stats.grid_products == 1);
  const EqualSpacedPoly f = es({3, 0, 5}, 4, 1, {{2, 2}});
  CHECK(es_mul(f, es({1}, 1, 0), F97, m) == es_to_dense(f));
}

TEST_CASE("interleaved pieces rebuild the composed core") {
  // Splitting with stride s/k and composing each piece with x^s shifted by
  // x^(i k) recovers core o x^k exactly.
  std::mt19937_64 rng(33);
  const Field field(9973);
  for (int i = 0; i < 50; ++i) {
    std::vector<Coeff> core(1 + rng() % 30);
    for (Coeff& c : core) c = 1 + rng() % 9972;
    const std::uint64_t k = 1 + rng() % 12, l = 1 + rng() % 12;
    std::map<Exponent, Coeff> seen;
    std::size_t pieces = 0;
    const std::size_t collisions = detail::spaced_product(
        core, k, std::vector<Coeff>{1}, l, field, CostModel{},
        [&](Exponent pos, Coeff v) { seen[pos] = v; }, &pieces);
    CHECK(collisions == 0);
    std::map<Exponent, Coeff> want;
    for (std::size_t j = 0; j < core.size(); ++j) want[j * k] = core[j];
    CHECK(seen == want);
  }
}

TEST_CASE("spaced multiplication matches the oracle without grid collisions") {
  std::mt19937_64 rng(34);
  const Field field(9973);
  for (int i = 0; i < 200; ++i) {
    auto make = [&]() {
      const std::size_t t = 1 + rng() % 120;
      const Exponent n = t + rng() % 3000;
      return from_exponents(spaced_set(rng, std::min<std::size_t>(t, n), n), &rng);
    };
    const DensePoly f = make(), g = make();
    const EqualSpacedPoly a = es_convert(f), b = es_convert(g);
    CostModel m;
    m.kind = static_cast<ModelKind>(i % 3);
    m.threshold = 1 + rng() % 16;
    EsMulStats stats;
    const DensePoly h = es_mul(a, b, field, m, &stats);
    CHECK(oracle::term_map(h) == oracle::multiply(f, g, 9973));
    CHECK(stats.collisions == 0);
  }
}

TEST_CASE("grid cost sums the piece products") {
  const CostModel m;
  std::mt19937_64 rng(35);
  for (int i = 0; i < 200; ++i) {
    const std::size_t na = 1 + rng() % 50, nb = 1 + rng() % 50;
    const std::uint64_t k = 1 + rng() % 9, l = 1 + rng() % 9;
    const std::uint64_t r = std::gcd(k, l), sa = l / r, sb = k / r;
    double want = 0;
    for (std::size_t a = 0; a < std::min<std::size_t>(sa, na); ++a) {
      for (std::size_t b = 0; b < std::min<std::size_t>(sb, nb); ++b) {
        want += m.mult_cost((na - a + sa - 1) / sa, (nb - b + sb - 1) / sb);
      }
    }
    CHECK(spaced_grid_cost(na, k, nb, l, m) == doctest::Approx(want));
  }
}
