#include <cmath>

#include "adaptmul/cost_model.hpp"
#include "adaptmul/errors.hpp"
#include "adaptmul/field.hpp"
#include "adaptmul/poly.hpp"
#include "doctest.h"

using namespace adaptmul;

namespace {

CostModel of(ModelKind kind, std::uint64_t threshold = 32) {
  CostModel m;
  m.kind = kind;
  m.threshold = threshold;
  return m;
}

}  // namespace

TEST_CASE("delta values") {
  CHECK(of(ModelKind::karatsuba).delta(1) == 1.0);
  CHECK(of(ModelKind::karatsuba).delta(64) == doctest::Approx(48.0).epsilon(1e-12));
  CHECK(of(ModelKind::karatsuba).delta(32) == 32.0);
  CHECK(of(ModelKind::schoolbook).delta(17) == 17.0);
  CHECK(of(ModelKind::fftlike).delta(8) == doctest::Approx(4.0));
  CHECK_THROWS_AS(of(ModelKind::schoolbook).delta(0), ArgumentError);
  for (ModelKind k : {ModelKind::schoolbook, ModelKind::karatsuba, ModelKind::fftlike}) {
    CostModel m = of(k);
    m.cap = 1000;
    CHECK(std::isinf(m.delta(1001)));
    CHECK(m.delta(1001) > 1e300);
    CHECK_FALSE(std::isinf(m.delta(1000)));
    CHECK(std::isinf(m.delta(1001) + 1.0));
  }
}

TEST_CASE("mult_cost is the blocked dense cost") {
  CHECK(of(ModelKind::schoolbook).mult_cost(8, 8) == 64.0);
  CHECK(of(ModelKind::schoolbook).mult_cost(100, 4) == 400.0);
  CHECK(of(ModelKind::schoolbook).mult_cost(4, 100) == 400.0);
  for (ModelKind k : {ModelKind::schoolbook, ModelKind::karatsuba, ModelKind::fftlike}) {
    CHECK(of(k).mult_cost(1, 1) == 1.0);
  }
}

TEST_CASE("shipped models satisfy the axioms up to 512") {
  CHECK(validate_model(of(ModelKind::schoolbook), 256).ok);
  CHECK(validate_model(of(ModelKind::karatsuba), 256).ok);
  for (std::uint64_t t : {1, 2, 8, 32, 100}) {
    for (ModelKind k : {ModelKind::schoolbook, ModelKind::karatsuba, ModelKind::fftlike}) {
      const ValidationReport r = validate_model(of(k, t), 512);
      INFO(to_string(k), " threshold ", t, ": ", r.message);
      CHECK(r.ok);
    }
  }
}

TEST_CASE("a convex model fails validation") {
  const ValidationReport r = validate_delta([](std::uint64_t n) { return double(n) * double(n); }, 64);
  CHECK_FALSE(r.ok);
  CHECK(r.a < r.b);
  CHECK(r.d >= 1);
  const double lhs = double((r.a + r.d) * (r.a + r.d)) - double(r.a * r.a);
  const double rhs = double((r.b + r.d) * (r.b + r.d)) - double(r.b * r.b);
  CHECK(lhs < rhs);
}

TEST_CASE("validation limit must not exceed the cap") {
  CostModel m;
  m.cap = 100;
  CHECK_THROWS_AS(validate_model(m, 101), ArgumentError);
}

TEST_CASE("model names round-trip") {
  for (ModelKind k : {ModelKind::schoolbook, ModelKind::karatsuba, ModelKind::fftlike}) {
    CHECK(parse_model_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_model_kind("fft"), ArgumentError);
}

TEST_CASE("karatsuba delta tracks the measured kernel within a factor of two") {
  const CostModel m = of(ModelKind::karatsuba);
  for (std::uint64_t n : {32, 64, 128, 256}) {
    const Field c = counted(make_field(9973));
    std::vector<Coeff> a(n, 1), b(n, 2);
    dense_mul(DensePoly(a), DensePoly(b), c, m);
    const double measured = double(c.counts().mul_count) / double(n);
    INFO("n=", n, " measured=", measured, " model=", m.delta(n));
    CHECK(measured <= 2 * m.delta(n));
    CHECK(m.delta(n) <= 2 * measured);
    CHECK(dense_mul_ops(n, n, m).mul_count == c.counts().mul_count);
  }
}
