#include "adaptmul/kronecker.hpp"

#include <algorithm>
#include <limits>

#include "adaptmul/errors.hpp"

namespace adaptmul {

namespace {

constexpr Exponent kMaxExp = std::numeric_limits<Exponent>::max();

Exponent checked_base(std::uint64_t max_degree) {
  if (max_degree == 0) throw ArgumentError("kronecker degree bound must be positive");
  if (max_degree > kMaxExp / 2) throw CapacityError("kronecker base 2d overflows");
  return 2 * max_degree;
}

}  // namespace

SparsePoly kronecker_pack(std::size_t vars, std::uint64_t max_degree,
                          const std::vector<MultiTerm>& terms) {
  const Exponent base = checked_base(max_degree);
  std::vector<Term> packed;
  packed.reserve(terms.size());
  for (const MultiTerm& t : terms) {
    if (t.exps.size() != vars) throw ArgumentError("term arity does not match variable count");
    if (t.coeff == 0) throw ArgumentError("zero coefficient in multivariate term");
    Exponent e = 0, scale = 1;
    for (std::size_t i = 0; i < vars; ++i) {
      if (t.exps[i] >= max_degree) throw ArgumentError("per-variable degree bound violated");
      if (t.exps[i] != 0) {
        if (scale > (kMaxExp - e) / t.exps[i]) throw CapacityError("packed exponent overflows");
        e += t.exps[i] * scale;
      }
      if (i + 1 < vars) {
        if (scale > kMaxExp / base) {
          // Higher variables must then all be zero for the pack to fit.
          for (std::size_t j = i + 1; j < vars; ++j) {
            if (t.exps[j] >= max_degree) throw ArgumentError("per-variable degree bound violated");
            if (t.exps[j] != 0) throw CapacityError("packed exponent overflows");
          }
          break;
        }
        scale *= base;
      }
    }
    packed.push_back({t.coeff, e});
  }
  std::sort(packed.begin(), packed.end(),
            [](const Term& a, const Term& b) { return a.exp < b.exp; });
  for (std::size_t i = 1; i < packed.size(); ++i) {
    if (packed[i].exp == packed[i - 1].exp) throw ArgumentError("duplicate exponent vector");
  }
  return SparsePoly(std::move(packed));
}

std::vector<MultiTerm> kronecker_unpack(std::size_t vars, std::uint64_t max_degree,
                                        const SparsePoly& packed) {
  const Exponent base = checked_base(max_degree);
  std::vector<MultiTerm> out;
  out.reserve(packed.term_count());
  for (const Term& t : packed.terms()) {
    MultiTerm m{t.coeff, std::vector<Exponent>(vars, 0)};
    Exponent e = t.exp;
    for (std::size_t i = 0; i < vars && e != 0; ++i) {
      if (i + 1 == vars) {
        m.exps[i] = e;
        e = 0;
      } else {
        m.exps[i] = e % base;
        e /= base;
      }
    }
    if (e != 0) throw ArgumentError("packed exponent exceeds the variable range");
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace adaptmul
