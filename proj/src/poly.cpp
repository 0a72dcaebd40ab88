#include "adaptmul/poly.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "adaptmul/errors.hpp"

namespace adaptmul {

DensePoly::DensePoly(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::size_t DensePoly::term_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(),
                                                [](Coeff c) { return c != 0; }));
}

SparsePoly::SparsePoly(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff == 0) throw ArgumentError("sparse term with zero coefficient");
    if (i > 0 && terms_[i].exp <= terms_[i - 1].exp) {
      throw ArgumentError("sparse exponents must strictly increase");
    }
  }
}

bool is_zero(const Poly& f) noexcept {
  return std::visit([](const auto& p) { return p.is_zero(); }, f);
}

std::size_t term_count(const Poly& f) noexcept {
  return std::visit([](const auto& p) { return p.term_count(); }, f);
}

Exponent degree(const Poly& f) noexcept {
  return std::visit([](const auto& p) { return p.degree(); }, f);
}

std::vector<Exponent> exponents(const Poly& f) {
  std::vector<Exponent> out;
  if (const auto* dense = std::get_if<DensePoly>(&f)) {
    const auto c = dense->coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] != 0) out.push_back(i);
    }
  } else {
    const auto& sparse = std::get<SparsePoly>(f);
    out.reserve(sparse.term_count());
    for (const Term& t : sparse.terms()) out.push_back(t.exp);
  }
  return out;
}

SparsePoly to_sparse(const DensePoly& f) {
  std::vector<Term> terms;
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) terms.push_back({c[i], i});
  }
  return SparsePoly(std::move(terms));
}

SparsePoly to_sparse(const Poly& f) {
  if (const auto* dense = std::get_if<DensePoly>(&f)) return to_sparse(*dense);
  return std::get<SparsePoly>(f);
}

DensePoly to_dense(const SparsePoly& f, std::uint64_t cap) {
  if (f.is_zero()) return {};
  if (f.degree() >= cap) {
    throw CapacityError("dense length " + std::to_string(f.degree()) + "+1 exceeds cap " +
                        std::to_string(cap));
  }
  std::vector<Coeff> c(f.degree() + 1, 0);
  for (const Term& t : f.terms()) c[t.exp] = t.coeff;
  return DensePoly(std::move(c));
}

DensePoly to_dense(const Poly& f, std::uint64_t cap) {
  if (const auto* dense = std::get_if<DensePoly>(&f)) {
    if (dense->length() > cap) throw CapacityError("dense length exceeds cap");
    return *dense;
  }
  return to_dense(std::get<SparsePoly>(f), cap);
}

namespace detail {

void schoolbook_accumulate(std::span<const Coeff> a, std::span<const Coeff> b,
                           std::span<Coeff> out, const Field& field) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Coeff ai = a[i];
    Coeff* row = out.data() + i;
    for (std::size_t j = 0; j < b.size(); ++j) row[j] = field.mul_add(row[j], ai, b[j]);
  }
}

namespace {

bool use_schoolbook(std::size_t n, const CostModel& model) {
  return !model.uses_karatsuba() || n <= std::max<std::uint64_t>(model.threshold, 1);
}

// Product of two length-n operands into a fresh buffer of length 2n-1.
std::vector<Coeff> karatsuba(std::span<const Coeff> a, std::span<const Coeff> b,
                             const Field& field, const CostModel& model) {
  const std::size_t n = a.size();
  std::vector<Coeff> out(2 * n - 1, 0);
  if (use_schoolbook(n, model)) {
    schoolbook_accumulate(a, b, out, field);
    return out;
  }
  const std::size_t h = (n + 1) / 2, rest = n - h;
  const auto a0 = a.first(h), a1 = a.subspan(h);
  const auto b0 = b.first(h), b1 = b.subspan(h);

  std::vector<Coeff> z0 = karatsuba(a0, b0, field, model);
  std::vector<Coeff> z2 = karatsuba(a1, b1, field, model);

  std::vector<Coeff> sa(a0.begin(), a0.end()), sb(b0.begin(), b0.end());
  for (std::size_t i = 0; i < rest; ++i) {
    sa[i] = field.add(sa[i], a1[i]);
    sb[i] = field.add(sb[i], b1[i]);
  }
  std::vector<Coeff> z1 = karatsuba(sa, sb, field, model);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = field.sub(z1[i], z0[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = field.sub(z1[i], z2[i]);

  // z0 fills [0, 2h-1) and z2 fills [2h, 2n-1): disjoint, so they are copied.
  std::copy(z0.begin(), z0.end(), out.begin());
  std::copy(z2.begin(), z2.end(), out.begin() + 2 * h);
  for (std::size_t i = 0; i < z1.size(); ++i) out[h + i] = field.add(out[h + i], z1[i]);
  return out;
}

OpCounter karatsuba_ops(std::uint64_t n, const CostModel& model) {
  if (use_schoolbook(n, model)) return {n * n, n * n};
  const std::uint64_t h = (n + 1) / 2, rest = n - h;
  const OpCounter lo = karatsuba_ops(h, model), hi = karatsuba_ops(rest, model);
  OpCounter ops;
  ops.mul_count = 2 * lo.mul_count + hi.mul_count;
  ops.add_count = 2 * lo.add_count + hi.add_count + 2 * rest + (2 * h - 1) + (2 * rest - 1) +
                  (2 * h - 1);
  return ops;
}

void accumulate_ops(std::uint64_t n, std::uint64_t m, const CostModel& model, OpCounter& ops) {
  if (n < m) std::swap(n, m);
  const std::uint64_t blocks = n / m, tail = n % m;
  if (blocks > 0) {
    const OpCounter one = karatsuba_ops(m, model);
    ops.mul_count += blocks * one.mul_count;
    ops.add_count += blocks * (one.add_count + 2 * m - 1);
  }
  if (tail > 0) accumulate_ops(m, tail, model, ops);
}

}  // namespace

void dense_mul_accumulate(std::span<const Coeff> a, std::span<const Coeff> b,
                          std::span<Coeff> out, const Field& field, const CostModel& model) {
  if (a.size() < b.size()) std::swap(a, b);
  const std::size_t m = b.size();
  std::size_t offset = 0;
  for (; offset + m <= a.size(); offset += m) {
    const std::vector<Coeff> block = karatsuba(a.subspan(offset, m), b, field, model);
    for (std::size_t i = 0; i < block.size(); ++i) {
      out[offset + i] = field.add(out[offset + i], block[i]);
    }
  }
  if (offset < a.size()) dense_mul_accumulate(b, a.subspan(offset), out.subspan(offset), field, model);
}

}  // namespace detail

DensePoly dense_mul(const DensePoly& f, const DensePoly& g, const Field& field,
                    const CostModel& model) {
  if (f.is_zero() || g.is_zero()) return {};
  const std::uint64_t len = f.length() + g.length() - 1;
  if (len > model.cap) {
    throw CapacityError("dense product length " + std::to_string(len) + " exceeds cap " +
                        std::to_string(model.cap));
  }
  std::vector<Coeff> out(len, 0);
  detail::dense_mul_accumulate(f.coeffs(), g.coeffs(), out, field, model);
  return DensePoly(std::move(out));
}

OpCounter dense_mul_ops(std::uint64_t n, std::uint64_t m, const CostModel& model) {
  OpCounter ops;
  if (n == 0 || m == 0) return ops;
  detail::accumulate_ops(n, m, model, ops);
  return ops;
}

SparsePoly sparse_mul(const SparsePoly& f, const SparsePoly& g, const Field& field) {
  if (f.is_zero() || g.is_zero()) return {};
  const SparsePoly& small = f.term_count() <= g.term_count() ? f : g;
  const SparsePoly& large = &small == &f ? g : f;
  if (small.degree() > std::numeric_limits<Exponent>::max() - large.degree()) {
    throw CapacityError("exponent sum overflows a machine word");
  }
  const auto st = small.terms(), lt = large.terms();

  struct Cursor {
    Exponent exp;
    std::uint32_t si;
    std::uint32_t li;
  };
  auto later = [](const Cursor& x, const Cursor& y) {
    return x.exp != y.exp ? x.exp > y.exp : x.si > y.si;
  };
  std::vector<Cursor> storage;
  storage.reserve(st.size());
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(later)> heap(later, std::move(storage));
  for (std::uint32_t i = 0; i < st.size(); ++i) heap.push({st[i].exp + lt[0].exp, i, 0});

  std::vector<Term> out;
  Exponent cur_exp = heap.top().exp;
  Coeff acc = 0;
  while (!heap.empty()) {
    Cursor c = heap.top();
    heap.pop();
    if (c.exp != cur_exp) {
      if (acc != 0) out.push_back({acc, cur_exp});
      cur_exp = c.exp;
      acc = 0;
    }
    acc = field.mul_add(acc, st[c.si].coeff, lt[c.li].coeff);
    if (c.li + 1 < lt.size()) {
      ++c.li;
      c.exp = st[c.si].exp + lt[c.li].exp;
      heap.push(c);
    }
  }
  if (acc != 0) out.push_back({acc, cur_exp});
  return SparsePoly(std::move(out));
}

SparsePoly sparse_add(const SparsePoly& f, const SparsePoly& g, const Field& field) {
  const auto a = f.terms(), b = g.terms();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exp < b[j].exp)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exp < a[i].exp) {
      out.push_back(b[j++]);
    } else {
      const Coeff s = field.add(a[i].coeff, b[j].coeff);
      if (s != 0) out.push_back({s, a[i].exp});
      ++i;
      ++j;
    }
  }
  return SparsePoly(std::move(out));
}

}  // namespace adaptmul
