#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace adaptmul {

/// Ring operations, as a real number. Infinity marks a size that cannot be
/// represented densely; it ranks above every finite cost and absorbs + and *.
using Cost = double;
inline constexpr Cost kInfiniteCost = std::numeric_limits<double>::infinity();

enum class ModelKind { schoolbook, karatsuba, fftlike };

std::string_view to_string(ModelKind kind) noexcept;
/// Throws ArgumentError on an unknown name.
ModelKind parse_model_kind(std::string_view name);

/// Multiplication-time model. delta(n) = M(n)/n is the cost per output
/// coefficient of multiplying two length-n dense polynomials. Lengths, not
/// degrees, are used everywhere: "size n" means n coefficients.
///
/// The model also picks the executed dense kernel: schoolbook runs the
/// quadratic kernel at every length, the other two switch to Karatsuba above
/// `threshold`.
struct CostModel {
  ModelKind kind = ModelKind::karatsuba;
  std::uint64_t threshold = 32;
  std::uint64_t cap = std::uint64_t{1} << 31;

  /// Throws ArgumentError for n == 0. Returns kInfiniteCost above cap.
  Cost delta(std::uint64_t n) const;

  /// delta without the cap cutoff; the analytic formula at any n >= 1.
  Cost delta_unbounded(std::uint64_t n) const noexcept;

  /// Blocked dense product of lengths n and m: max(n,m) * delta(min(n,m)).
  Cost mult_cost(std::uint64_t n, std::uint64_t m) const;

  bool uses_karatsuba() const noexcept { return kind != ModelKind::schoolbook; }

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

struct ValidationReport {
  bool ok = true;
  /// Empty when ok. Otherwise names the failing property and its witness.
  std::string message;
  std::uint64_t a = 0, b = 0, d = 0;
};

/// Checks delta(1) == 1, monotonicity, and the concavity axiom
/// delta(a+d) - delta(a) >= delta(b+d) - delta(b) for all a < b, d >= 1 with
/// b + d <= limit. Comparing consecutive a for each d is sufficient: the
/// inequality chains, so the first violation found is also a violation of
/// the all-pairs statement.
ValidationReport validate_delta(const std::function<Cost(std::uint64_t)>& delta,
                                std::uint64_t limit);
ValidationReport validate_model(const CostModel& model, std::uint64_t limit);

}  // namespace adaptmul
