#include "adaptmul/equal_spaced.hpp"

#include <bit>
#include <cmath>

namespace adaptmul {

void validate(const EqualSpacedPoly& f) {
  if (f.spacing == 0) throw ArgumentError("spacing must be positive");
  if (!f.core.is_zero() && f.core[0] == 0) throw ArgumentError("core must have a nonzero constant term");
  for (const Term& t : f.noise.terms()) {
    if (!f.core.is_zero() && t.exp >= f.shift && (t.exp - f.shift) % f.spacing == 0) {
      throw ArgumentError("noise term lies on the spaced class");
    }
  }
}

std::uint64_t k_bound(std::size_t t, Exponent n) {
  if (t == 0) throw ArgumentError("k_bound needs at least one term");
  if (t < 32) return n;
  const double denom = static_cast<double>(t - 1) - 2.0 * std::log2(static_cast<double>(t));
  return static_cast<std::uint64_t>(std::floor(static_cast<double>(n) / denom));
}

bool within_log2(std::size_t s, std::size_t t) noexcept {
  return s < 64 && (std::uint64_t{1} << s) <= t;
}

MajorityVote majority_residue(std::span<const Exponent> exps, std::uint64_t k) {
  Exponent candidate = 0;
  std::size_t votes = 0;
  for (Exponent e : exps) {
    const Exponent r = e % k;
    if (votes == 0) {
      candidate = r;
      votes = 1;
    } else if (r == candidate) {
      ++votes;
    } else {
      --votes;
    }
  }
  MajorityVote out{candidate, 0};
  for (Exponent e : exps) out.count += e % k == candidate;
  return out;
}

namespace {

EqualSpacedPoly split_on_class(const DensePoly& f, std::span<const Exponent> exps,
                               std::uint64_t k, Exponent residue) {
  EqualSpacedPoly out;
  out.spacing = k;
  std::vector<Term> noise;
  bool have_shift = false;
  for (Exponent e : exps) {
    if (e % k == residue) {
      if (!have_shift) {
        out.shift = e;
        have_shift = true;
      }
    } else {
      noise.push_back({f[e], e});
    }
  }
  std::vector<Coeff> core;
  for (Exponent e : exps) {
    if (e % k != residue) continue;
    const std::size_t at = (e - out.shift) / k;
    core.resize(at + 1, 0);
    core[at] = f[e];
  }
  out.core = DensePoly(std::move(core));
  out.noise = SparsePoly(std::move(noise));
  return out;
}

}  // namespace

EqualSpacedPoly es_convert(const DensePoly& f) {
  if (f.is_zero()) throw ArgumentError("equal-spaced conversion of the zero polynomial");
  const std::vector<Exponent> exps = exponents(Poly(f));
  const std::size_t t = exps.size();
  if (t <= 4) {
    const Exponent width = t == 1 ? exps.front() : exps.back() - exps.front();
    const std::uint64_t k = std::max<Exponent>(width, 1);
    return split_on_class(f, exps, k, exps.front() % k);
  }
  for (std::uint64_t k = k_bound(t, exps.back()); k >= 2; --k) {
    const MajorityVote vote = majority_residue(exps, k);
    if (within_log2(t - vote.count, t)) return split_on_class(f, exps, k, vote.residue);
  }
  return split_on_class(f, exps, 1, 0);
}

DensePoly es_to_dense(const EqualSpacedPoly& f, std::uint64_t cap) {
  Exponent top = 0;
  bool any = false;
  if (!f.core.is_zero()) {
    top = f.shift + f.core.degree() * f.spacing;
    any = true;
  }
  if (!f.noise.is_zero()) {
    top = std::max(top, f.noise.degree());
    any = true;
  }
  if (!any) return {};
  if (top >= cap) throw CapacityError("dense length exceeds cap");
  std::vector<Coeff> c(top + 1, 0);
  for (std::size_t i = 0; i < f.core.length(); ++i) c[f.shift + i * f.spacing] = f.core[i];
  for (const Term& t : f.noise.terms()) c[t.exp] = t.coeff;
  return DensePoly(std::move(c));
}

namespace {

// Nonzero terms of (core o x^k) * x^d.
SparsePoly spaced_terms(const DensePoly& core, std::uint64_t k, Exponent d) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < core.length(); ++i) {
    if (core[i] != 0) terms.push_back({core[i], d + i * k});
  }
  return SparsePoly(std::move(terms));
}

Exponent top_exponent(const EqualSpacedPoly& f) {
  Exponent top = 0;
  if (!f.core.is_zero()) top = f.shift + f.core.degree() * f.spacing;
  if (!f.noise.is_zero()) top = std::max(top, f.noise.degree());
  return top;
}

bool es_is_zero(const EqualSpacedPoly& f) { return f.core.is_zero() && f.noise.is_zero(); }

}  // namespace

DensePoly es_mul(const EqualSpacedPoly& f, const EqualSpacedPoly& g, const Field& field,
                 const CostModel& model, EsMulStats* stats) {
  if (f.spacing == 0 || g.spacing == 0) throw ArgumentError("spacing must be positive");
  if (es_is_zero(f) || es_is_zero(g)) return {};
  const Exponent top_f = top_exponent(f), top_g = top_exponent(g);
  if (top_f > std::numeric_limits<Exponent>::max() - top_g || top_f + top_g >= model.cap) {
    throw CapacityError("product length exceeds cap");
  }
  std::vector<Coeff> out(top_f + top_g + 1, 0);
  EsMulStats local;

  if (!f.core.is_zero() && !g.core.is_zero()) {
    const Exponent base = f.shift + g.shift;
    local.collisions = detail::spaced_product(
        f.core.coeffs(), f.spacing, g.core.coeffs(), g.spacing, field, model,
        [&](Exponent pos, Coeff v) { out[base + pos] = v; }, &local.grid_products);
  }
  auto add_in = [&](const SparsePoly& p) {
    for (const Term& t : p.terms()) out[t.exp] = field.add(out[t.exp], t.coeff);
  };
  if (!f.noise.is_zero() || !g.noise.is_zero()) {
    const SparsePoly fd = spaced_terms(f.core, f.spacing, f.shift);
    const SparsePoly gd = spaced_terms(g.core, g.spacing, g.shift);
    if (!g.noise.is_zero()) add_in(sparse_mul(fd, g.noise, field));
    if (!f.noise.is_zero()) add_in(sparse_mul(gd, f.noise, field));
    if (!f.noise.is_zero() && !g.noise.is_zero()) add_in(sparse_mul(f.noise, g.noise, field));
  }
  if (stats != nullptr) *stats = local;
  return DensePoly(std::move(out));
}

Cost spaced_grid_cost(std::size_t na, std::uint64_t k, std::size_t nb, std::uint64_t l,
                      const CostModel& model) {
  if (na == 0 || nb == 0) return 0;
  const std::uint64_t r = std::gcd(k, l);
  // Piece lengths for a length-n core cut with stride `stride`: `longer`
  // pieces of length q+1 and the rest of length q.
  struct Split {
    std::uint64_t short_len, short_count, long_count;
  };
  auto split = [](std::uint64_t n, std::uint64_t stride) {
    const std::uint64_t pieces = std::min(stride, n);
    const std::uint64_t q = n / stride, rem = n % stride;
    return Split{q, pieces - std::min(rem, pieces), std::min(rem, pieces)};
  };
  const Split a = split(na, l / r), b = split(nb, k / r);
  Cost total = 0;
  auto add = [&](std::uint64_t len_a, std::uint64_t cnt_a, std::uint64_t len_b, std::uint64_t cnt_b) {
    if (cnt_a == 0 || cnt_b == 0) return;
    total += static_cast<double>(cnt_a) * static_cast<double>(cnt_b) * model.mult_cost(len_a, len_b);
  };
  add(a.short_len + 1, a.long_count, b.short_len + 1, b.long_count);
  add(a.short_len + 1, a.long_count, b.short_len, b.short_count);
  add(a.short_len, a.short_count, b.short_len + 1, b.long_count);
  add(a.short_len, a.short_count, b.short_len, b.short_count);
  return total;
}

Cost es_mult_cost(const EqualSpacedPoly& f, const EqualSpacedPoly& g, const CostModel& model) {
  const double nz_f = static_cast<double>(f.core.term_count());
  const double nz_g = static_cast<double>(g.core.term_count());
  const double ns_f = static_cast<double>(f.noise.term_count());
  const double ns_g = static_cast<double>(g.noise.term_count());
  return spaced_grid_cost(f.core.length(), f.spacing, g.core.length(), g.spacing, model) +
         nz_f * ns_g + nz_g * ns_f + ns_f * ns_g;
}

}  // namespace adaptmul
