#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "adaptmul/cost_model.hpp"
#include "adaptmul/errors.hpp"
#include "adaptmul/field.hpp"
#include "adaptmul/poly.hpp"

namespace adaptmul {

/// f = (core o x^spacing) * x^shift + noise.
///
/// core(0) != 0 unless f is zero, and no noise exponent is congruent to
/// shift modulo spacing.
struct EqualSpacedPoly {
  DensePoly core;
  std::uint64_t spacing = 1;
  Exponent shift = 0;
  SparsePoly noise;

  friend bool operator==(const EqualSpacedPoly&, const EqualSpacedPoly&) = default;
};

/// Throws ArgumentError if the representation invariants fail.
void validate(const EqualSpacedPoly& f);

/// Largest spacing worth trying for t terms with top exponent n:
/// floor(n / (t - 1 - 2 log2 t)) for t >= 32, n otherwise.
std::uint64_t k_bound(std::size_t t, Exponent n);

/// 2^s <= t, i.e. s <= log2 t without floating point.
bool within_log2(std::size_t s, std::size_t t) noexcept;

struct MajorityVote {
  Exponent residue = 0;
  std::size_t count = 0;  // exponents in the winning class
};

/// Boyer-Moore majority vote over residues mod k, followed by a counting pass.
/// When no residue holds a strict majority the returned class is whatever
/// the vote left standing.
MajorityVote majority_residue(std::span<const Exponent> exps, std::uint64_t k);

/// Largest spacing whose dominant residue class leaves at most log2 t
/// exponents outside it. Scans k downward from k_bound(t, e_t); up to four
/// terms take k = e_t - e_1 directly. Falls back to spacing 1 with empty
/// noise. Throws ArgumentError on zero input.
EqualSpacedPoly es_convert(const DensePoly& f);

DensePoly es_to_dense(const EqualSpacedPoly& f, std::uint64_t cap = CostModel{}.cap);

struct EsMulStats {
  std::size_t grid_products = 0;
  /// Writes that landed on a position another grid product already wrote.
  std::size_t collisions = 0;
};

/// Exact product. With r = gcd(k, l) and s = lcm(k, l), core f is split into
/// s/k interleaved pieces f_i (every (s/k)-th coefficient starting at i) and
/// likewise g into s/l pieces; each f_i * g_j lands, composed with x^s, at
/// offset i*k + j*l. Those offsets are distinct modulo s, so the pieces
/// never overlap. Terms involving noise go through sparse_mul.
DensePoly es_mul(const EqualSpacedPoly& f, const EqualSpacedPoly& g, const Field& field,
                 const CostModel& model, EsMulStats* stats = nullptr);

/// Model cost of the grid for cores of lengths na (spacing k) and nb
/// (spacing l): sum over nonempty piece pairs of mult_cost.
Cost spaced_grid_cost(std::size_t na, std::uint64_t k, std::size_t nb, std::uint64_t l,
                      const CostModel& model);

/// Grid cost plus nz(f core)*t(g noise) + nz(g core)*t(f noise) + t(f noise)*t(g noise).
Cost es_mult_cost(const EqualSpacedPoly& f, const EqualSpacedPoly& g, const CostModel& model);

namespace detail {

/// Computes (a o x^k) * (b o x^l) piece by piece and hands every coefficient
/// of every piece product to emit(position, value). Returns the number of
/// positions written twice.
template <typename Emit>
std::size_t spaced_product(std::span<const Coeff> a, std::uint64_t k, std::span<const Coeff> b,
                           std::uint64_t l, const Field& field, const CostModel& model,
                           Emit&& emit, std::size_t* pieces = nullptr) {
  const std::uint64_t r = std::gcd(k, l);
  const std::uint64_t sa = l / r, sb = k / r;  // s/k and s/l
  if (sa != 0 && k > std::numeric_limits<std::uint64_t>::max() / sa) {
    throw CapacityError("lcm of spacings overflows a machine word");
  }
  const std::uint64_t s = k * sa;
  const Exponent top = (a.size() - 1) * k + (b.size() - 1) * l;
  std::vector<bool> written(top / r + 1, false);
  std::size_t collisions = 0;

  auto piece = [](std::span<const Coeff> c, std::uint64_t stride, std::size_t i) {
    std::vector<Coeff> p;
    p.reserve((c.size() - i + stride - 1) / stride);
    for (std::size_t q = i; q < c.size(); q += stride) p.push_back(c[q]);
    return p;
  };
  std::vector<std::vector<Coeff>> b_pieces;
  for (std::size_t j = 0; j < std::min<std::uint64_t>(sb, b.size()); ++j) {
    b_pieces.push_back(piece(b, sb, j));
  }
  std::vector<Coeff> prod;
  for (std::size_t i = 0; i < std::min<std::uint64_t>(sa, a.size()); ++i) {
    const std::vector<Coeff> ai = piece(a, sa, i);
    for (std::size_t j = 0; j < b_pieces.size(); ++j) {
      const std::vector<Coeff>& bj = b_pieces[j];
      prod.assign(ai.size() + bj.size() - 1, 0);
      dense_mul_accumulate(ai, bj, prod, field, model);
      if (pieces != nullptr) ++*pieces;
      const Exponent base = i * k + j * l;
      for (std::size_t q = 0; q < prod.size(); ++q) {
        const Exponent pos = q * s + base;
        if (written[pos / r]) {
          ++collisions;
        } else {
          written[pos / r] = true;
        }
        emit(pos, prod[q]);
      }
    }
  }
  return collisions;
}

}  // namespace detail

}  // namespace adaptmul
