#include "adaptmul/combined.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "adaptmul/errors.hpp"

namespace adaptmul {

namespace {

constexpr Exponent kMaxExp = std::numeric_limits<Exponent>::max();

std::vector<Exponent> nonzero_positions(const DensePoly& p) {
  std::vector<Exponent> out;
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (p[i] != 0) out.push_back(i);
  }
  return out;
}

Exponent chunk_top(const SpacedChunk& c, std::uint64_t k) { return c.offset + c.core.degree() * k; }

Exponent top_exponent(const ChunkedSpacedPoly& f) {
  Exponent top = 0;
  if (!f.chunks.empty()) top = chunk_top(f.chunks.back(), f.spacing);
  if (!f.noise.is_zero()) top = std::max(top, f.noise.degree());
  return top;
}

// Nonzero terms of the chunk part, in exponent order.
SparsePoly chunk_terms(const ChunkedSpacedPoly& f) {
  std::vector<Term> terms;
  for (const SpacedChunk& c : f.chunks) {
    for (std::size_t i = 0; i < c.core.length(); ++i) {
      if (c.core[i] != 0) terms.push_back({c.core[i], c.offset + i * f.spacing});
    }
  }
  return SparsePoly(std::move(terms));
}

}  // namespace

std::size_t ChunkedSpacedPoly::term_count() const noexcept {
  std::size_t n = noise.term_count();
  for (const SpacedChunk& c : chunks) n += c.core.term_count();
  return n;
}

ChunkedSpacedPoly unspaced(const ChunkyPoly& c) {
  ChunkedSpacedPoly out;
  for (const Chunk& ch : c.chunks()) out.chunks.push_back({ch.poly, ch.offset});
  return out;
}

ChunkedSpacedPoly spaced_from_chunky(const ChunkyPoly& c, const SpacingOptions& options) {
  if (c.is_zero()) return {};
  const std::size_t total = c.term_count();
  std::vector<std::vector<Exponent>> rel;
  rel.reserve(c.chunk_count());
  std::uint64_t k_init = kMaxExp;
  for (const Chunk& ch : c.chunks()) {
    rel.push_back(nonzero_positions(ch.poly));
    if (rel.back().size() >= 2) k_init = std::min(k_init, k_bound(rel.back().size(), rel.back().back()));
  }
  if (k_init == kMaxExp) return unspaced(c);

  const std::uint64_t budget =
      options.scan_budget == 0 ? std::max<std::uint64_t>(k_init, 4096) : options.scan_budget;
  std::vector<Exponent> residues(rel.size(), 0);
  std::uint64_t scanned = 0;
  for (std::uint64_t k = k_init; k >= 2 && scanned < budget; --k, ++scanned) {
    std::size_t off_class = 0;
    bool fits = true;
    for (std::size_t i = 0; i < rel.size() && fits; ++i) {
      if (rel[i].size() < 2) {
        residues[i] = rel[i].front() % k;
        continue;
      }
      const MajorityVote vote = majority_residue(rel[i], k);
      residues[i] = vote.residue;
      off_class += rel[i].size() - vote.count;
      fits = within_log2(off_class, total);
    }
    if (!fits) continue;

    ChunkedSpacedPoly out;
    out.spacing = k;
    std::vector<Term> noise;
    const auto chunks = c.chunks();
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const DensePoly& p = chunks[i].poly;
      const Exponent base = chunks[i].offset;
      std::vector<Coeff> core;
      bool started = false;
      Exponent shift = 0;
      for (Exponent e : rel[i]) {
        if (e % k != residues[i]) {
          noise.push_back({p[e], base + e});
          continue;
        }
        if (!started) {
          shift = e;
          started = true;
        }
        const std::size_t at = (e - shift) / k;
        core.resize(at + 1, 0);
        core[at] = p[e];
      }
      if (started) out.chunks.push_back({DensePoly(std::move(core)), base + shift});
    }
    out.noise = SparsePoly(std::move(noise));
    return out;
  }
  return unspaced(c);
}

ChunkedSpacedPoly combined_convert(const Poly& f, std::uint64_t chunk_size, const CostModel& model,
                                   const SpacingOptions& options) {
  return spaced_from_chunky(chunky_convert(f, chunk_size, model), options);
}

DensePoly combined_to_dense(const ChunkedSpacedPoly& f, std::uint64_t cap) {
  if (f.is_zero()) return {};
  const Exponent top = top_exponent(f);
  if (top >= cap) throw CapacityError("dense length exceeds cap");
  std::vector<Coeff> c(top + 1, 0);
  for (const SpacedChunk& ch : f.chunks) {
    for (std::size_t i = 0; i < ch.core.length(); ++i) c[ch.offset + i * f.spacing] = ch.core[i];
  }
  for (const Term& t : f.noise.terms()) c[t.exp] = t.coeff;
  return DensePoly(std::move(c));
}

SparsePoly combined_to_sparse(const ChunkedSpacedPoly& f) {
  const SparsePoly spaced = chunk_terms(f);
  std::vector<Term> terms(spaced.terms().begin(), spaced.terms().end());
  terms.insert(terms.end(), f.noise.terms().begin(), f.noise.terms().end());
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  return SparsePoly(std::move(terms));
}

Poly combined_mul(const ChunkedSpacedPoly& f, const ChunkedSpacedPoly& g, const Field& field,
                  const CostModel& model, Target target, CombinedMulStats* stats) {
  if (f.spacing == 0 || g.spacing == 0) throw ArgumentError("spacing must be positive");
  if (f.is_zero() || g.is_zero()) {
    return target == Target::dense ? Poly(DensePoly{}) : Poly(SparsePoly{});
  }
  const Exponent top_f = top_exponent(f), top_g = top_exponent(g);
  if (top_f > kMaxExp - top_g) throw CapacityError("exponent sum overflows a machine word");
  if (target == Target::dense && top_f + top_g >= model.cap) {
    throw CapacityError("product length exceeds cap");
  }
  CombinedMulStats local;

  std::vector<Coeff> dense_out;
  if (target == Target::dense) dense_out.assign(top_f + top_g + 1, 0);
  std::vector<Term> sparse_out;
  std::vector<Term> region;
  Exponent region_end = 0;
  auto flush = [&]() {
    std::stable_sort(region.begin(), region.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    for (std::size_t i = 0; i < region.size();) {
      Coeff sum = region[i].coeff;
      std::size_t j = i + 1;
      for (; j < region.size() && region[j].exp == region[i].exp; ++j) sum = field.add(sum, region[j].coeff);
      if (sum != 0) sparse_out.push_back({sum, region[i].exp});
      i = j;
    }
    region.clear();
  };

  if (!f.chunks.empty() && !g.chunks.empty()) {
    const bool f_outer = f.chunks.size() >= g.chunks.size();
    const ChunkedSpacedPoly& outer = f_outer ? f : g;
    const ChunkedSpacedPoly& inner = f_outer ? g : f;
    struct Pair {
      Exponent exp;
      std::uint32_t i;
      std::uint32_t j;
    };
    auto later = [](const Pair& a, const Pair& b) { return a.exp != b.exp ? a.exp > b.exp : a.j > b.j; };
    std::priority_queue<Pair, std::vector<Pair>, decltype(later)> heap(later);
    for (std::uint32_t j = 0; j < inner.chunks.size(); ++j) {
      heap.push({outer.chunks[0].offset + inner.chunks[j].offset, 0, j});
    }
    local.max_heap = heap.size();
    while (!heap.empty()) {
      const Pair top = heap.top();
      heap.pop();
      const SpacedChunk& a = outer.chunks[top.i];
      const SpacedChunk& b = inner.chunks[top.j];
      const Exponent base = top.exp;
      if (target == Target::dense) {
        local.collisions += detail::spaced_product(
            a.core.coeffs(), outer.spacing, b.core.coeffs(), inner.spacing, field, model,
            [&](Exponent pos, Coeff v) { dense_out[base + pos] = field.add(dense_out[base + pos], v); },
            &local.grid_products);
      } else {
        if (!region.empty() && base > region_end) flush();
        region_end = std::max(region_end, base + a.core.degree() * outer.spacing +
                                              b.core.degree() * inner.spacing);
        local.collisions += detail::spaced_product(
            a.core.coeffs(), outer.spacing, b.core.coeffs(), inner.spacing, field, model,
            [&](Exponent pos, Coeff v) {
              if (v != 0) region.push_back({v, base + pos});
            },
            &local.grid_products);
      }
      ++local.pair_products;
      if (top.i + 1 < outer.chunks.size()) {
        heap.push({outer.chunks[top.i + 1].offset + inner.chunks[top.j].offset, top.i + 1, top.j});
      }
      local.max_heap = std::max(local.max_heap, heap.size());
    }
    if (!region.empty()) flush();
  }

  std::vector<SparsePoly> noise_products;
  if (!f.noise.is_zero() || !g.noise.is_zero()) {
    if (!g.noise.is_zero()) noise_products.push_back(sparse_mul(chunk_terms(f), g.noise, field));
    if (!f.noise.is_zero()) noise_products.push_back(sparse_mul(chunk_terms(g), f.noise, field));
    if (!f.noise.is_zero() && !g.noise.is_zero()) {
      noise_products.push_back(sparse_mul(f.noise, g.noise, field));
    }
  }
  if (stats != nullptr) *stats = local;

  if (target == Target::dense) {
    for (const SparsePoly& p : noise_products) {
      for (const Term& t : p.terms()) dense_out[t.exp] = field.add(dense_out[t.exp], t.coeff);
    }
    return DensePoly(std::move(dense_out));
  }
  SparsePoly result(std::move(sparse_out));
  for (const SparsePoly& p : noise_products) result = sparse_add(result, p, field);
  return result;
}

Cost combined_mult_cost(const ChunkedSpacedPoly& f, const ChunkedSpacedPoly& g,
                        const CostModel& model) {
  Cost total = 0;
  for (const SpacedChunk& a : f.chunks) {
    for (const SpacedChunk& b : g.chunks) {
      total += spaced_grid_cost(a.core.length(), f.spacing, b.core.length(), g.spacing, model);
    }
  }
  double nz_f = 0, nz_g = 0;
  for (const SpacedChunk& a : f.chunks) nz_f += static_cast<double>(a.core.term_count());
  for (const SpacedChunk& b : g.chunks) nz_g += static_cast<double>(b.core.term_count());
  const double ns_f = static_cast<double>(f.noise.term_count());
  const double ns_g = static_cast<double>(g.noise.term_count());
  return total + nz_f * ns_g + nz_g * ns_f + ns_f * ns_g;
}

CombinedPlan combined_plan(const Poly& f, const Poly& g, const CostModel& model,
                           const SpacingOptions& options) {
  CombinedPlan plan;
  plan.chunky = chunky_plan(f, g, model);
  const ChunkedSpacedPoly f_options[2] = {unspaced(plan.chunky.f), spaced_from_chunky(plan.chunky.f, options)};
  const ChunkedSpacedPoly g_options[2] = {unspaced(plan.chunky.g), spaced_from_chunky(plan.chunky.g, options)};
  plan.f = f_options[0];
  plan.g = g_options[0];
  plan.cost = combined_mult_cost(plan.f, plan.g, model);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (a + b == 0) continue;
      const Cost cost = combined_mult_cost(f_options[a], g_options[b], model);
      if (cost < plan.cost) {
        plan.f = f_options[a];
        plan.g = g_options[b];
        plan.cost = cost;
      }
    }
  }
  return plan;
}

}  // namespace adaptmul
