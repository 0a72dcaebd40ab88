#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "adaptmul/cost_model.hpp"
#include "adaptmul/field.hpp"

namespace adaptmul {

using Exponent = std::uint64_t;

/// Coefficient array, index = exponent. Empty means zero; otherwise the last
/// coefficient is nonzero.
class DensePoly {
 public:
  DensePoly() = default;
  /// Trailing zeros are dropped.
  explicit DensePoly(std::vector<Coeff> coeffs);

  std::span<const Coeff> coeffs() const noexcept { return coeffs_; }
  std::size_t length() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Requires a nonzero polynomial.
  Exponent degree() const noexcept { return coeffs_.size() - 1; }
  Coeff operator[](std::size_t i) const noexcept { return coeffs_[i]; }
  /// Number of nonzero coefficients.
  std::size_t term_count() const noexcept;

  friend bool operator==(const DensePoly&, const DensePoly&) = default;

 private:
  std::vector<Coeff> coeffs_;
};

struct Term {
  Coeff coeff;
  Exponent exp;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Nonzero terms with strictly increasing exponents. Empty means zero.
class SparsePoly {
 public:
  SparsePoly() = default;
  /// Throws ArgumentError if a coefficient is zero or exponents do not
  /// strictly increase.
  explicit SparsePoly(std::vector<Term> terms);

  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  Exponent degree() const noexcept { return terms_.back().exp; }

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  std::vector<Term> terms_;
};

/// A polynomial in whichever representation the caller supplied.
using Poly = std::variant<DensePoly, SparsePoly>;

bool is_zero(const Poly& f) noexcept;
std::size_t term_count(const Poly& f) noexcept;
/// Largest exponent; requires f nonzero.
Exponent degree(const Poly& f) noexcept;
/// Nonzero exponents in increasing order.
std::vector<Exponent> exponents(const Poly& f);

SparsePoly to_sparse(const DensePoly& f);
SparsePoly to_sparse(const Poly& f);
/// Throws CapacityError if the degree is not below `cap`.
DensePoly to_dense(const SparsePoly& f, std::uint64_t cap = CostModel{}.cap);
DensePoly to_dense(const Poly& f, std::uint64_t cap = CostModel{}.cap);

/// Exact product. Lengths n >= m: the longer operand is cut into blocks of
/// length m, each block multiplied by the shorter operand with Karatsuba
/// (schoolbook at or below model.threshold, or always under the schoolbook
/// model) and accumulated at its offset. A trailing short block recurses with
/// the roles swapped. Throws CapacityError if the product length exceeds
/// model.cap.
DensePoly dense_mul(const DensePoly& f, const DensePoly& g, const Field& field,
                    const CostModel& model);

/// Ring-operation counts dense_mul performs on nonzero operands of lengths n
/// and m. Runs the same recursion without touching coefficients, so it can
/// price products far too large to execute.
OpCounter dense_mul_ops(std::uint64_t n, std::uint64_t m, const CostModel& model);

/// Term-by-term product merged through a min-heap holding one cursor per term
/// of the operand with fewer terms. Cancelled terms are dropped. Throws
/// CapacityError if an exponent sum overflows.
SparsePoly sparse_mul(const SparsePoly& f, const SparsePoly& g, const Field& field);

/// Termwise sum; also used to merge partial products.
SparsePoly sparse_add(const SparsePoly& f, const SparsePoly& g, const Field& field);

namespace detail {

/// out[i + j] += a[i] * b[j] over the full index ranges. `out` must hold
/// a.size() + b.size() - 1 entries.
void schoolbook_accumulate(std::span<const Coeff> a, std::span<const Coeff> b,
                           std::span<Coeff> out, const Field& field);

/// out += a * b for nonempty operands; `out` holds a.size() + b.size() - 1.
void dense_mul_accumulate(std::span<const Coeff> a, std::span<const Coeff> b,
                          std::span<Coeff> out, const Field& field, const CostModel& model);

}  // namespace detail

}  // namespace adaptmul
