#pragma once

#include <cstdint>
#include <vector>

#include "adaptmul/poly.hpp"

namespace adaptmul {

/// One term of an n-variate polynomial.
struct MultiTerm {
  Coeff coeff;
  std::vector<Exponent> exps;

  friend bool operator==(const MultiTerm&, const MultiTerm&) = default;
};

/// Maps x_i -> y^((2d)^(i-1)), so (e_1..e_n) packs to sum e_i (2d)^(i-1).
/// With every per-variable degree below d, products of packed operands have
/// per-variable degrees below 2d and unpack without carries.
///
/// Throws ArgumentError if a term has the wrong arity, a degree >= d, a zero
/// coefficient, or two terms share an exponent vector; CapacityError if the
/// packed exponent does not fit a word. Terms may come in any order.
SparsePoly kronecker_pack(std::size_t vars, std::uint64_t max_degree,
                          const std::vector<MultiTerm>& terms);

/// Inverse of kronecker_pack with the same (vars, max_degree): repeated
/// div/mod by 2d. Output is ordered by packed exponent.
std::vector<MultiTerm> kronecker_unpack(std::size_t vars, std::uint64_t max_degree,
                                        const SparsePoly& packed);

}  // namespace adaptmul
