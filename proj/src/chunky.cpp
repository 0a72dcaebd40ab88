#include "adaptmul/chunky.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <string>

#include "adaptmul/errors.hpp"

namespace adaptmul {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr Exponent kMaxExp = std::numeric_limits<Exponent>::max();

}  // namespace

ChunkyPoly::ChunkyPoly(std::vector<Chunk> chunks) : chunks_(std::move(chunks)) {
  for (std::size_t i = 0; i < chunks_.size(); ++i) {
    const Chunk& c = chunks_[i];
    if (c.poly.is_zero()) throw ArgumentError("empty chunk");
    if (c.poly[0] == 0) throw ArgumentError("chunk with zero constant coefficient");
    if (c.poly.degree() > kMaxExp - c.offset) throw CapacityError("chunk exponent overflows");
    if (i > 0) {
      const Chunk& p = chunks_[i - 1];
      if (c.offset <= p.offset + p.poly.degree()) throw ArgumentError("chunks overlap or are unordered");
    }
  }
}

std::size_t ChunkyPoly::term_count() const noexcept {
  std::size_t n = 0;
  for (const Chunk& c : chunks_) n += c.poly.term_count();
  return n;
}

GapProfile gap_profile(const Poly& f) {
  if (is_zero(f)) throw ArgumentError("gap profile of the zero polynomial");
  GapProfile gp;
  if (const auto* dense = std::get_if<DensePoly>(&f)) {
    const auto c = dense->coeffs();
    std::size_t i = 0;
    while (i < c.size()) {
      const std::size_t gap_begin = i;
      while (c[i] == 0) ++i;  // normalized: a nonzero coefficient follows
      const std::size_t block_begin = i;
      while (i < c.size() && c[i] != 0) ++i;
      gp.gaps.push_back(block_begin - gap_begin);
      gp.blocks.push_back(i - block_begin);
    }
  } else {
    const auto t = std::get<SparsePoly>(f).terms();
    Exponent next = 0;
    std::size_t i = 0;
    while (i < t.size()) {
      const Exponent block_begin = t[i].exp;
      std::size_t j = i + 1;
      while (j < t.size() && t[j].exp == t[j - 1].exp + 1) ++j;
      gp.gaps.push_back(block_begin - next);
      gp.blocks.push_back(j - i);
      next = t[j - 1].exp + 1;
      i = j;
    }
  }
  gp.prefix.assign(gp.gaps.size() + 1, 0);
  for (std::size_t i = 0; i < gp.gaps.size(); ++i) {
    gp.prefix[i + 1] = gp.prefix[i] + gp.gaps[i] + gp.blocks[i];
  }
  return gp;
}

Cost chunk_cost(std::span<const std::uint64_t> lengths, std::uint64_t k, const CostModel& model) {
  if (k == 0) throw ArgumentError("chunk size must be positive");
  std::uint64_t long_total = 0;
  std::map<std::uint64_t, std::uint64_t> short_counts;
  for (std::uint64_t len : lengths) {
    if (len >= k) {
      long_total += len;
    } else {
      ++short_counts[len];
    }
  }
  Cost short_sum = 0;
  for (const auto& [len, count] : short_counts) short_sum += static_cast<double>(count) * model.delta(len);
  Cost total = static_cast<double>(k) * short_sum;
  if (long_total > 0) total += model.delta(k) * static_cast<double>(long_total);
  return total;
}

Cost chunk_cost(const ChunkyPoly& rep, std::uint64_t k, const CostModel& model) {
  std::vector<std::uint64_t> lengths;
  lengths.reserve(rep.chunk_count());
  for (const Chunk& c : rep.chunks()) lengths.push_back(c.poly.length());
  return chunk_cost(lengths, k, model);
}

// ---------------------------------------------------------------------------
// Optimal conversion for a fixed chunk size.

namespace {

class BoundaryPass {
 public:
  BoundaryPass(const GapProfile& gp, std::uint64_t k, const CostModel& model, HorizonSearch search)
      : gp_(gp),
        model_(model),
        search_(search),
        m_(gp.gap_count()),
        last_(m_ + 1),
        k_(k),
        kd_(static_cast<double>(k)),
        dk_(model.delta(k)),
        start_(m_ + 1),
        cost_(m_ + 2, 0.0),
        prev_(m_ + 2, 0),
        expiry_(m_ + 1),
        first_alive_(m_ + 2, 0),
        frozen_answer_(m_ + 2, kNone) {
    for (std::size_t i = 0; i <= m_; ++i) start_[i] = gp.block_start(i);
    // expiry_[i]: first position at which a chunk opened by candidate i
    // reaches length k (last_ + 1 if never).
    std::size_t l = 1;
    for (std::size_t i = 0; i <= m_; ++i) {
      l = std::max(l, i + 1);
      while (l <= last_ && pos(l) - start_[i] < k_) ++l;
      expiry_[i] = l;
    }
    std::size_t i = 0;
    for (std::size_t q = 1; q <= last_; ++q) {
      while (i < q && expiry_[i] <= q) ++i;
      first_alive_[q] = i;
    }
  }

  std::vector<std::size_t> run() {
    std::size_t lin_best = kNone;
    double lin_key = 0;
    std::size_t lin_next = 0;
    std::size_t pivot = 0;

    for (std::size_t l = 1; l <= last_; ++l) {
      const std::size_t fresh = l - 1;
      while (lin_next < l && expiry_[lin_next] <= l) {
        const double key = cost_[lin_next] - dk_ * static_cast<double>(start_[lin_next]);
        if (lin_best == kNone || key < lin_key) {
          lin_best = lin_next;
          lin_key = key;
        }
        ++lin_next;
      }
      if (expiry_[fresh] > l) push(fresh, l);
      if (first_alive_[l] > pivot) {
        freeze(first_alive_[l], l, l);
        stack_.clear();
        pivot = l;
      }

      std::size_t best = kNone;
      double best_cost = kInfiniteCost;
      auto offer = [&](std::size_t cand, double value) {
        if (best == kNone || value < best_cost) {
          best = cand;
          best_cost = value;
        }
      };
      if (lin_best != kNone) offer(lin_best, linear(lin_best, l));
      if (l <= frozen_end_ && frozen_answer_[l] != kNone) {
        offer(frozen_answer_[l], concave(frozen_answer_[l], l));
      }
      while (!stack_.empty() && stack_.back().until <= l) stack_.pop_back();
      if (!stack_.empty()) offer(stack_.back().cand, concave(stack_.back().cand, l));
      cost_[l] = best_cost;
      prev_[l] = best;
    }

    std::vector<std::size_t> kept;
    for (std::size_t i = prev_[last_]; i != 0; i = prev_[i]) kept.push_back(i);
    std::reverse(kept.begin(), kept.end());
    return kept;
  }

 private:
  struct Horizon {
    std::size_t cand;
    std::size_t until;  // optimal for positions < until
  };
  struct Envelope {
    std::size_t cand;
    std::size_t from;  // optimal for positions >= from, up to the next entry
  };

  Exponent pos(std::size_t l) const { return gp_.prefix[l]; }

  double concave(std::size_t i, std::size_t l) const {
    return cost_[i] + kd_ * model_.delta_unbounded(pos(l) - start_[i]);
  }
  double linear(std::size_t i, std::size_t l) const {
    return cost_[i] + dk_ * static_cast<double>(pos(l) - start_[i]);
  }

  // Least v in [lo, hi] with pred(v); pred is monotone and pred(hi) holds.
  std::size_t find_first(std::size_t lo, std::size_t hi,
                         const std::function<bool(std::size_t)>& pred) const {
    if (search_ == HorizonSearch::galloping) {
      if (pred(lo)) return lo;
      std::size_t known_false = lo, step = 1;
      while (true) {
        const std::size_t probe = hi - known_false <= step ? hi : known_false + step;
        if (pred(probe)) {
          lo = known_false + 1;
          hi = probe;
          break;
        }
        known_false = probe;
        step *= 2;
      }
    }
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (pred(mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }

  // New candidate n enters at position l. Later candidates win early and
  // lose for good once an earlier one catches up.
  void push(std::size_t n, std::size_t l) {
    while (!stack_.empty() && stack_.back().until <= l) stack_.pop_back();
    std::size_t range_begin = l;
    while (!stack_.empty()) {
      const Horizon top = stack_.back();
      // Past its own expiry the top is served by the frozen ranking, so the
      // crossover only matters before then.
      const std::size_t top_last = std::min({top.until - 1, last_, expiry_[top.cand] - 1});
      if (top_last < range_begin || concave(n, top_last) < concave(top.cand, top_last)) {
        range_begin = top.until;
        stack_.pop_back();
        continue;
      }
      const std::size_t v = find_first(range_begin, top_last, [&](std::size_t q) {
        return concave(top.cand, q) <= concave(n, q);
      });
      if (v > l) stack_.push_back({n, v});
      return;
    }
    stack_.push_back({n, last_ + 1});
  }

  // Candidates [lo, hi) are alive at position l0 but will drop out in index
  // order. Rank them offline for every position they can still reach by
  // sweeping positions downward while admitting earlier candidates.
  void freeze(std::size_t lo, std::size_t hi, std::size_t l0) {
    if (lo >= hi) {
      frozen_end_ = 0;
      return;
    }
    const std::size_t end = std::min(expiry_[hi - 1] - 1, last_);
    frozen_end_ = end;
    std::vector<Envelope> env;

    auto admit = [&](std::size_t e) {
      while (!env.empty()) {
        const Envelope top = env.back();
        if (concave(e, end) > concave(top.cand, end)) return;
        if (concave(e, top.from) <= concave(top.cand, top.from)) {
          env.pop_back();
          continue;
        }
        const std::size_t y = find_first(top.from + 1, end, [&](std::size_t q) {
          return concave(e, q) <= concave(top.cand, q);
        });
        env.push_back({e, y});
        return;
      }
      env.push_back({e, l0});
    };

    std::size_t next = hi;
    for (std::size_t q = end;; --q) {
      while (next > lo && next - 1 >= first_alive_[q]) admit(--next);
      auto it = std::upper_bound(env.begin(), env.end(), q,
                                 [](std::size_t value, const Envelope& x) { return value < x.from; });
      frozen_answer_[q] = std::prev(it)->cand;
      if (q == l0) break;
    }
  }

  const GapProfile& gp_;
  const CostModel& model_;
  HorizonSearch search_;
  std::size_t m_, last_;
  std::uint64_t k_;
  double kd_, dk_;
  std::vector<Exponent> start_;
  std::vector<double> cost_;
  std::vector<std::size_t> prev_;
  std::vector<std::size_t> expiry_;
  std::vector<std::size_t> first_alive_;
  std::vector<Horizon> stack_;
  std::vector<std::size_t> frozen_answer_;
  std::size_t frozen_end_ = 0;
};

}  // namespace

std::vector<std::size_t> chunky_boundaries(const GapProfile& profile, std::uint64_t k,
                                           const CostModel& model, HorizonSearch search) {
  if (k == 0) throw ArgumentError("chunk size must be positive");
  if (profile.gap_count() == 0) return {};
  k = std::min(k, model.cap);
  return BoundaryPass(profile, k, model, search).run();
}

ChunkyPoly chunky_from_boundaries(const Poly& f, const GapProfile& profile,
                                  std::span<const std::size_t> boundaries,
                                  const CostModel& model) {
  const std::size_t m = profile.gap_count();
  std::vector<std::pair<Exponent, Exponent>> spans;  // [begin, end)
  std::size_t open = 0;
  for (std::size_t b : boundaries) {
    if (b == 0 || b > m || b <= open) throw ArgumentError("invalid boundary list");
    spans.emplace_back(profile.block_start(open), profile.prefix[b]);
    open = b;
  }
  spans.emplace_back(profile.block_start(open), profile.prefix[m + 1]);

  std::vector<Chunk> chunks;
  chunks.reserve(spans.size());
  const auto* dense = std::get_if<DensePoly>(&f);
  std::size_t cursor = 0;
  for (const auto& [begin, end] : spans) {
    if (end - begin > model.cap) throw CapacityError("chunk length exceeds cap");
    std::vector<Coeff> c;
    if (dense != nullptr) {
      const auto all = dense->coeffs();
      c.assign(all.begin() + static_cast<std::ptrdiff_t>(begin),
               all.begin() + static_cast<std::ptrdiff_t>(end));
    } else {
      const auto terms = std::get<SparsePoly>(f).terms();
      c.assign(end - begin, 0);
      while (cursor < terms.size() && terms[cursor].exp < end) {
        c[terms[cursor].exp - begin] = terms[cursor].coeff;
        ++cursor;
      }
    }
    chunks.push_back({DensePoly(std::move(c)), begin});
  }
  return ChunkyPoly(std::move(chunks));
}

ChunkyPoly chunky_convert(const Poly& f, std::uint64_t k, const CostModel& model) {
  if (k == 0) throw ArgumentError("chunk size must be positive");
  const GapProfile gp = gap_profile(f);
  const HorizonSearch search =
      std::holds_alternative<DensePoly>(f) ? HorizonSearch::galloping : HorizonSearch::binary;
  const std::vector<std::size_t> kept = chunky_boundaries(gp, k, model, search);
  return chunky_from_boundaries(f, gp, kept, model);
}

ChunkyPoly chunky_blocks(const Poly& f, const CostModel& model) {
  const GapProfile gp = gap_profile(f);
  std::vector<std::size_t> all(gp.gap_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i + 1;
  return chunky_from_boundaries(f, gp, all, model);
}

ChunkyPoly chunky_whole(const Poly& f, const CostModel& model) {
  const GapProfile gp = gap_profile(f);
  return chunky_from_boundaries(f, gp, {}, model);
}

ChunkyPoly chunky_terms(const Poly& f) {
  std::vector<Chunk> chunks;
  const SparsePoly s = to_sparse(f);
  for (const Term& t : s.terms()) chunks.push_back({DensePoly({t.coeff}), t.exp});
  return ChunkyPoly(std::move(chunks));
}

// ---------------------------------------------------------------------------
// Chunk-size selection.

namespace {

// Alive gaps between neighbouring chunks, with the merge key of each gap and
// a monotone min-queue over those keys.
class GapQueue {
 public:
  GapQueue(std::vector<Exponent> exps, bool bucketed, std::uint64_t cap)
      : e_(std::move(exps)), bucketed_(bucketed), cap_(cap) {
    const std::size_t gaps = e_.empty() ? 0 : e_.size() - 1;
    prev_.resize(gaps);
    next_.resize(gaps);
    state_.assign(gaps, State::live);
    key_.resize(gaps);
    for (std::size_t j = 0; j < gaps; ++j) {
      prev_[j] = j == 0 ? kNone : j - 1;
      next_[j] = j + 1 == gaps ? kNone : j + 1;
    }
    if (bucketed_) {
      // Keys never exceed the span of the operand plus one.
      const std::uint64_t max_key = gaps == 0 ? 0 : e_.back() - e_.front() + 1;
      head_.assign(std::min<std::uint64_t>(max_key, cap_) + 1, kNone);
      bnext_.assign(gaps, kNone);
      bprev_.assign(gaps, kNone);
    }
    for (std::size_t j = 0; j < gaps; ++j) place(j, merge_key(j));
  }

  std::size_t size() const noexcept { return live_; }
  std::size_t perm() const noexcept { return perm_; }
  bool empty() const noexcept { return live_ == 0; }

  std::uint64_t min_key() {
    if (bucketed_) {
      while (head_[finger_] == kNone) ++finger_;
      return finger_;
    }
    while (true) {
      const auto [key, j] = heap_.top();
      if (state_[j] == State::live && key_[j] == key) return key;
      heap_.pop();
    }
  }

  void drain(std::uint64_t k) {
    while (!empty() && min_key() <= k) {
      std::size_t j;
      if (bucketed_) {
        j = head_[finger_];
        unbucket(j);
      } else {
        j = heap_.top().second;
        heap_.pop();
      }
      state_[j] = State::merged;
      --live_;
      const std::size_t p = prev_[j], q = next_[j];
      if (p != kNone) next_[p] = q;
      if (q != kNone) prev_[q] = p;
      if (p != kNone && state_[p] == State::live) rekey(p);
      if (q != kNone && state_[q] == State::live) rekey(q);
    }
  }

 private:
  enum class State : unsigned char { live, merged, permanent };

  // Length of the chunk formed by merging the two chunks beside gap j.
  std::uint64_t merge_key(std::size_t j) const {
    const std::size_t left = prev_[j] == kNone ? 0 : prev_[j] + 1;
    const std::size_t right = next_[j] == kNone ? e_.size() - 1 : next_[j];
    const Exponent span = e_[right] - e_[left];
    return span == kMaxExp ? kMaxExp : span + 1;
  }

  void place(std::size_t j, std::uint64_t key) {
    key_[j] = key;
    if (key > cap_) {
      state_[j] = State::permanent;
      ++perm_;
      return;
    }
    ++live_;
    if (bucketed_) {
      bprev_[j] = kNone;
      bnext_[j] = head_[key];
      if (bnext_[j] != kNone) bprev_[bnext_[j]] = j;
      head_[key] = j;
    } else {
      heap_.push({key, j});
    }
  }

  void unbucket(std::size_t j) {
    if (bprev_[j] != kNone) {
      bnext_[bprev_[j]] = bnext_[j];
    } else {
      head_[key_[j]] = bnext_[j];
    }
    if (bnext_[j] != kNone) bprev_[bnext_[j]] = bprev_[j];
  }

  void rekey(std::size_t j) {
    const std::uint64_t key = merge_key(j);
    if (key == key_[j]) return;
    if (bucketed_) unbucket(j);
    --live_;
    place(j, key);
  }

  std::vector<Exponent> e_;
  bool bucketed_;
  std::uint64_t cap_;
  std::vector<std::size_t> prev_, next_;
  std::vector<State> state_;
  std::vector<std::uint64_t> key_;
  std::size_t live_ = 0, perm_ = 0;
  // Bucket array of intrusive lists, scanned by a forward-only finger.
  std::vector<std::size_t> head_, bnext_, bprev_;
  std::size_t finger_ = 0;
  // Lazy-deletion binary heap.
  using Entry = std::pair<std::uint64_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
};

}  // namespace

ChunkSizeResult optimal_chunk_size(const Poly& f, const Poly& g, const CostModel& model,
                                   bool record_trace) {
  if (is_zero(f) || is_zero(g)) throw ArgumentError("chunk size of a zero operand");
  GapQueue qf(exponents(f), std::holds_alternative<DensePoly>(f), model.cap);
  GapQueue qg(exponents(g), std::holds_alternative<DensePoly>(g), model.cap);

  auto chunks = [](const GapQueue& q) { return static_cast<double>(q.size() + q.perm() + 1); };
  ChunkSizeResult result;
  result.k = 1;
  result.cost = chunks(qf) * chunks(qg) * model.delta(1);
  if (record_trace) {
    result.trace.push_back({1, qf.size(), qg.size(), qf.perm(), qg.perm(), result.cost});
  }
  while (!qf.empty() || !qg.empty()) {
    std::uint64_t k = kMaxExp;
    if (!qf.empty()) k = std::min(k, qf.min_key());
    if (!qg.empty()) k = std::min(k, qg.min_key());
    qf.drain(k);
    qg.drain(k);
    const Cost cost = chunks(qf) * chunks(qg) * static_cast<double>(k) * model.delta(k);
    if (record_trace) result.trace.push_back({k, qf.size(), qg.size(), qf.perm(), qg.perm(), cost});
    if (cost < result.cost) {
      result.k = k;
      result.cost = cost;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Multiplication.

ChunkyPoly chunky_mul(const ChunkyPoly& f, const ChunkyPoly& g, const Field& field,
                      const CostModel& model, ChunkyMulStats* stats) {
  if (f.is_zero() || g.is_zero()) return {};
  // The outer operand has at least as many chunks as the inner one; the heap
  // holds one cursor per inner chunk.
  const ChunkyPoly& outer = f.chunk_count() >= g.chunk_count() ? f : g;
  const ChunkyPoly& inner = &outer == &f ? g : f;
  const auto fc = outer.chunks(), gc = inner.chunks();
  const Exponent top_f = fc.back().offset + fc.back().poly.degree();
  const Exponent top_g = gc.back().offset + gc.back().poly.degree();
  if (top_f > kMaxExp - top_g) throw CapacityError("exponent sum overflows a machine word");

  struct Pair {
    Exponent exp;
    std::uint32_t i;
    std::uint32_t j;
  };
  auto later = [](const Pair& a, const Pair& b) { return a.exp != b.exp ? a.exp > b.exp : a.j > b.j; };
  std::priority_queue<Pair, std::vector<Pair>, decltype(later)> heap(later);
  for (std::uint32_t j = 0; j < gc.size(); ++j) heap.push({fc[0].offset + gc[j].offset, 0, j});

  std::vector<Chunk> out;
  std::vector<Coeff> alpha;
  Exponent base = 0;
  auto flush = [&]() {
    std::size_t lo = 0, hi = alpha.size();
    while (lo < hi && alpha[lo] == 0) ++lo;
    while (hi > lo && alpha[hi - 1] == 0) --hi;
    if (lo < hi) {
      std::vector<Coeff> body(alpha.begin() + static_cast<std::ptrdiff_t>(lo),
                              alpha.begin() + static_cast<std::ptrdiff_t>(hi));
      out.push_back({DensePoly(std::move(body)), base + lo});
    }
  };

  std::size_t max_heap = heap.size(), products = 0;
  while (!heap.empty()) {
    const Pair top = heap.top();
    heap.pop();
    const DensePoly& a = fc[top.i].poly;
    const DensePoly& b = gc[top.j].poly;
    const std::size_t len = a.length() + b.length() - 1;
    if (len > model.cap) throw CapacityError("chunk product exceeds cap");
    if (alpha.empty() || base + (alpha.size() - 1) < top.exp) {
      if (!alpha.empty()) flush();
      alpha.assign(len, 0);
      base = top.exp;
    } else if (top.exp - base + len > alpha.size()) {
      alpha.resize(top.exp - base + len, 0);
    }
    if (alpha.size() > model.cap) throw CapacityError("accumulated chunk exceeds cap");
    detail::dense_mul_accumulate(a.coeffs(), b.coeffs(),
                                 std::span<Coeff>(alpha).subspan(top.exp - base, len), field, model);
    ++products;
    if (top.i + 1 < fc.size()) {
      heap.push({fc[top.i + 1].offset + gc[top.j].offset, top.i + 1, top.j});
    }
    max_heap = std::max(max_heap, heap.size());
  }
  flush();
  if (stats != nullptr) {
    stats->max_heap = max_heap;
    stats->pair_products = products;
  }
  return ChunkyPoly(std::move(out));
}

Cost chunky_mult_cost(const ChunkyPoly& f, const ChunkyPoly& g, const CostModel& model) {
  Cost total = 0;
  for (const Chunk& a : f.chunks()) {
    for (const Chunk& b : g.chunks()) total += model.mult_cost(a.poly.length(), b.poly.length());
  }
  return total;
}

DensePoly chunky_to_dense(const ChunkyPoly& h, std::uint64_t cap) {
  if (h.is_zero()) return {};
  const Chunk& last = h.chunks().back();
  const Exponent deg = last.offset + last.poly.degree();
  if (deg >= cap) throw CapacityError("dense length exceeds cap");
  std::vector<Coeff> c(deg + 1, 0);
  for (const Chunk& ch : h.chunks()) {
    std::copy(ch.poly.coeffs().begin(), ch.poly.coeffs().end(),
              c.begin() + static_cast<std::ptrdiff_t>(ch.offset));
  }
  return DensePoly(std::move(c));
}

SparsePoly chunky_to_sparse(const ChunkyPoly& h) {
  std::vector<Term> terms;
  terms.reserve(h.term_count());
  for (const Chunk& ch : h.chunks()) {
    const auto c = ch.poly.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] != 0) terms.push_back({c[i], ch.offset + i});
    }
  }
  return SparsePoly(std::move(terms));
}

ChunkyPlan chunky_plan(const Poly& f, const Poly& g, const CostModel& model) {
  ChunkyPlan plan;
  plan.chunk_size = optimal_chunk_size(f, g, model).k;
  plan.f = chunky_convert(f, plan.chunk_size, model);
  plan.g = chunky_convert(g, plan.chunk_size, model);
  plan.cost = chunky_mult_cost(plan.f, plan.g, model);

  auto consider = [&](ChunkyShape shape, ChunkyPoly cf, ChunkyPoly cg) {
    const Cost cost = chunky_mult_cost(cf, cg, model);
    if (cost < plan.cost) {
      plan.f = std::move(cf);
      plan.g = std::move(cg);
      plan.cost = cost;
      plan.shape = shape;
    }
  };
  const auto n = exponents(f), m = exponents(g);
  if (n.back() - n.front() < model.cap && m.back() - m.front() < model.cap) {
    consider(ChunkyShape::whole, chunky_whole(f, model), chunky_whole(g, model));
  }
  consider(ChunkyShape::terms, chunky_terms(f), chunky_terms(g));
  return plan;
}

}  // namespace adaptmul
