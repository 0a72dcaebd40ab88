// Independent reference implementations used by the tests. None of them
// share code with the library beyond the polynomial containers.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "adaptmul/chunky.hpp"
#include "adaptmul/poly.hpp"

namespace oracle {

using adaptmul::Coeff;
using adaptmul::Exponent;

/// (exponent, coefficient) pairs of any representation.
inline std::map<Exponent, Coeff> term_map(const adaptmul::Poly& f) {
  std::map<Exponent, Coeff> out;
  const adaptmul::SparsePoly s = adaptmul::to_sparse(f);
  for (const adaptmul::Term& t : s.terms()) out[t.exp] = t.coeff;
  return out;
}

/// Term-by-term expansion with plain integer arithmetic.
inline std::map<Exponent, Coeff> multiply(const adaptmul::Poly& f, const adaptmul::Poly& g,
                                          std::uint64_t p) {
  const auto a = term_map(f), b = term_map(g);
  std::map<Exponent, Coeff> out;
  if (a.empty() || b.empty()) return out;
  const Exponent top = a.rbegin()->first + b.rbegin()->first;
  if (p < (std::uint64_t{1} << 31) && top < (Exponent{1} << 24)) {
    // Products stay below 2^62, so partial sums can wait for reduction.
    std::vector<std::uint64_t> acc(top + 1, 0);
    for (const auto& [ea, ca] : a) {
      for (const auto& [eb, cb] : b) {
        std::uint64_t& slot = acc[ea + eb];
        slot += ca * cb;
        if (slot >> 63) slot %= p;
      }
    }
    for (Exponent e = 0; e <= top; ++e) {
      if (acc[e] % p != 0) out[e] = acc[e] % p;
    }
    return out;
  }
  std::map<Exponent, Coeff> acc;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      const auto prod = static_cast<Coeff>(static_cast<adaptmul::detail::u128>(ca) * cb % p);
      Coeff& slot = acc[ea + eb];
      slot = static_cast<Coeff>((static_cast<adaptmul::detail::u128>(slot) + prod) % p);
    }
  }
  for (const auto& [e, c] : acc) {
    if (c != 0) out[e] = c;
  }
  return out;
}

/// Objective of one chunk-boundary choice: boundaries are gap indices.
inline double boundary_cost(const adaptmul::GapProfile& gp, const std::vector<std::size_t>& kept,
                            std::uint64_t k, const adaptmul::CostModel& model) {
  std::vector<std::uint64_t> lengths;
  std::size_t open = 0;
  for (std::size_t b : kept) {
    lengths.push_back(gp.prefix[b] - gp.block_start(open));
    open = b;
  }
  lengths.push_back(gp.prefix[gp.gap_count() + 1] - gp.block_start(open));
  return adaptmul::chunk_cost(lengths, k, model);
}

/// Minimum over all 2^m boundary subsets.
inline double exhaustive_min_cost(const adaptmul::GapProfile& gp, std::uint64_t k,
                                  const adaptmul::CostModel& model) {
  const std::size_t m = gp.gap_count();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) kept.push_back(i + 1);
    }
    best = std::min(best, boundary_cost(gp, kept, k, model));
  }
  return best;
}

/// Quadratic dynamic program over boundary positions.
inline double quadratic_min_cost(const adaptmul::GapProfile& gp, std::uint64_t k,
                                 const adaptmul::CostModel& model) {
  const std::size_t m = gp.gap_count();
  std::vector<double> c(m + 2, std::numeric_limits<double>::infinity());
  c[0] = 0;
  for (std::size_t l = 1; l <= m + 1; ++l) {
    for (std::size_t i = 0; i < l; ++i) {
      const std::uint64_t len = gp.prefix[l] - gp.block_start(i);
      const double piece = len < k ? static_cast<double>(k) * model.delta(len)
                                   : model.delta(k) * static_cast<double>(len);
      c[l] = std::min(c[l], c[i] + piece);
    }
  }
  return c[m + 1];
}

/// Fewest chunks of length <= k covering the sorted exponents (greedy).
inline std::uint64_t min_chunks(const std::vector<Exponent>& e, std::uint64_t k) {
  std::uint64_t count = 0;
  std::size_t i = 0;
  while (i < e.size()) {
    const Exponent start = e[i];
    ++count;
    while (i < e.size() && e[i] - start + 1 <= k) ++i;
  }
  return count;
}

/// Largest k in [2, n] with at least t - log2 t exponents in one residue
/// class, or 1 if none.
inline std::uint64_t brute_force_spacing(const std::vector<Exponent>& e) {
  const std::size_t t = e.size();
  std::vector<std::size_t> classes;
  for (std::uint64_t k = e.back(); k >= 2; --k) {
    classes.assign(k, 0);
    std::size_t best = 0;
    for (Exponent x : e) best = std::max(best, ++classes[x % k]);
    const std::size_t off = t - best;
    if (off < 64 && (std::uint64_t{1} << off) <= t) return k;
  }
  return 1;
}

/// Random nonzero polynomial with `terms` distinct exponents below `span`.
inline adaptmul::Poly random_poly(std::mt19937_64& rng, std::uint64_t p, Exponent span,
                                  std::size_t terms, bool dense) {
  std::map<Exponent, Coeff> t;
  terms = std::max<std::size_t>(1, std::min<std::size_t>(terms, span));
  while (t.size() < terms) t[rng() % span] = 1 + rng() % (p - 1);
  if (dense) {
    std::vector<Coeff> c(t.rbegin()->first + 1, 0);
    for (const auto& [e, v] : t) c[e] = v;
    return adaptmul::DensePoly(std::move(c));
  }
  std::vector<adaptmul::Term> out;
  for (const auto& [e, v] : t) out.push_back({v, e});
  return adaptmul::SparsePoly(std::move(out));
}

}  // namespace oracle
