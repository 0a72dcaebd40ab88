#include "adaptmul/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adaptmul/errors.hpp"

namespace adaptmul {

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::schoolbook: return "schoolbook";
    case ModelKind::karatsuba: return "karatsuba";
    case ModelKind::fftlike: return "fftlike";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "schoolbook") return ModelKind::schoolbook;
  if (name == "karatsuba") return ModelKind::karatsuba;
  if (name == "fftlike") return ModelKind::fftlike;
  throw ArgumentError("unknown cost model '" + std::string(name) + "'");
}

Cost CostModel::delta_unbounded(std::uint64_t n) const noexcept {
  const double x = static_cast<double>(n);
  switch (kind) {
    case ModelKind::schoolbook:
      return x;
    case ModelKind::karatsuba: {
      if (n <= threshold) return x;
      const double t = static_cast<double>(threshold);
      // log2(3) - 1; continuous at the threshold.
      return t * std::pow(x / t, std::log2(3.0) - 1.0);
    }
    case ModelKind::fftlike:
      return 1.0 + std::log2(x);
  }
  return x;
}

Cost CostModel::delta(std::uint64_t n) const {
  if (n == 0) throw ArgumentError("delta(n) requires n >= 1");
  if (n > cap) return kInfiniteCost;
  return delta_unbounded(n);
}

Cost CostModel::mult_cost(std::uint64_t n, std::uint64_t m) const {
  if (n == 0 || m == 0) throw ArgumentError("mult_cost requires positive lengths");
  const std::uint64_t lo = std::min(n, m), hi = std::max(n, m);
  if (hi > cap) return kInfiniteCost;
  return static_cast<double>(hi) * delta(lo);
}

ValidationReport validate_delta(const std::function<Cost(std::uint64_t)>& delta,
                                std::uint64_t limit) {
  ValidationReport report;
  auto fail = [&](const std::string& what, std::uint64_t a, std::uint64_t b, std::uint64_t d) {
    std::ostringstream out;
    out << what << " at a=" << a << " b=" << b << " d=" << d;
    report.ok = false;
    report.message = out.str();
    report.a = a;
    report.b = b;
    report.d = d;
    return report;
  };
  if (limit == 0) return report;
  if (delta(1) != 1.0) return fail("normalization delta(1) != 1", 1, 1, 0);
  for (std::uint64_t n = 1; n < limit; ++n) {
    if (delta(n + 1) < delta(n)) return fail("delta decreases", n, n + 1, 0);
  }
  for (std::uint64_t d = 1; d < limit; ++d) {
    for (std::uint64_t a = 1; a + 1 + d <= limit; ++a) {
      const Cost lhs = delta(a + d) - delta(a);
      const Cost rhs = delta(a + 1 + d) - delta(a + 1);
      if (lhs < rhs) return fail("concavity axiom violated", a, a + 1, d);
    }
  }
  return report;
}

ValidationReport validate_model(const CostModel& model, std::uint64_t limit) {
  if (limit > model.cap) throw ArgumentError("validation limit exceeds model cap");
  return validate_delta([&](std::uint64_t n) { return model.delta(n); }, limit);
}

}  // namespace adaptmul
