#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "adaptmul/cost_model.hpp"
#include "adaptmul/field.hpp"
#include "adaptmul/poly.hpp"

namespace adaptmul {

struct Chunk {
  DensePoly poly;
  Exponent offset = 0;

  friend bool operator==(const Chunk&, const Chunk&) = default;
};

/// Sparse outer polynomial with dense chunks as coefficients:
///   f = f_1 x^e_1 + ... + f_t x^e_t,  e_{i+1} > e_i + deg f_i.
/// Every chunk has nonzero constant and leading coefficients. No chunks means
/// zero.
class ChunkyPoly {
 public:
  ChunkyPoly() = default;
  /// Throws ArgumentError when the ordering or chunk-shape invariants fail.
  explicit ChunkyPoly(std::vector<Chunk> chunks);

  std::span<const Chunk> chunks() const noexcept { return chunks_; }
  std::size_t chunk_count() const noexcept { return chunks_.size(); }
  bool is_zero() const noexcept { return chunks_.empty(); }
  /// Total nonzero coefficients over all chunks.
  std::size_t term_count() const noexcept;

  friend bool operator==(const ChunkyPoly&, const ChunkyPoly&) = default;

 private:
  std::vector<Chunk> chunks_;
};

/// Run-length view of the coefficient sequence: zero runs a_0..a_m
/// alternating with nonzero runs b_0..b_m, and prefix positions
/// d_i = sum_{j<i} (a_j + b_j) for i = 0..m+1. a_0 may be 0; every other run
/// is nonempty. Gap i (1 <= i <= m) starts at d_i; block i starts at d_i+a_i.
struct GapProfile {
  std::vector<Exponent> gaps;
  std::vector<Exponent> blocks;
  std::vector<Exponent> prefix;

  /// m, the number of interior gaps.
  std::size_t gap_count() const noexcept { return gaps.size() - 1; }
  Exponent block_start(std::size_t i) const noexcept { return prefix[i] + gaps[i]; }
};

/// One pass over the representation. Throws ArgumentError on zero.
GapProfile gap_profile(const Poly& f);

/// Objective for multiplying by one size-k chunk:
///   delta(k) * sum_{L >= k} L  +  k * sum_{L < k} delta(L)
/// over chunk lengths L. The small-chunk sum is accumulated in increasing
/// order of L so equal multisets of lengths give bit-identical results.
Cost chunk_cost(std::span<const std::uint64_t> lengths, std::uint64_t k, const CostModel& model);
Cost chunk_cost(const ChunkyPoly& rep, std::uint64_t k, const CostModel& model);

/// How the optimal-conversion pass locates the end of a new candidate's
/// validity range.
enum class HorizonSearch { binary, galloping };

/// Gap indices (1..m, increasing) kept as chunk boundaries by the optimal
/// conversion for multiplication by one size-k chunk. Minimizes chunk_cost
/// exactly over all 2^m subsets of gaps.
///
/// Left-to-right pass over gaps keeping the best cost c_l of each prefix and
/// back-pointers (shared-tail lists). Predecessors whose chunk would stay
/// shorter than k are ranked by the concave term k*delta(L); for those the
/// crossing property holds (an earlier boundary that wins once keeps
/// winning), so they live on a stack of (candidate, horizon) pairs whose
/// horizons are located by binary or galloping search. Predecessors whose
/// chunk has reached length k cost delta(k)*L, linear with a common slope,
/// so one running minimum covers them. Candidates cross from the first set
/// to the second in index order; when that eats into the live stack, the
/// surviving candidates are re-ranked offline for the positions they can
/// still reach.
std::vector<std::size_t> chunky_boundaries(const GapProfile& profile, std::uint64_t k,
                                           const CostModel& model,
                                           HorizonSearch search = HorizonSearch::binary);

/// Builds chunks of f cut at the given gap indices.
ChunkyPoly chunky_from_boundaries(const Poly& f, const GapProfile& profile,
                                  std::span<const std::size_t> boundaries,
                                  const CostModel& model);

/// Optimal chunky representation of f for a size-k co-operand. Uses
/// galloping horizon search for dense input and binary for sparse input.
/// Throws ArgumentError on zero or k == 0; k above model.cap is clamped.
ChunkyPoly chunky_convert(const Poly& f, std::uint64_t k, const CostModel& model);

/// One chunk per maximal nonzero block (the k = 1 optimum).
ChunkyPoly chunky_blocks(const Poly& f, const CostModel& model);
/// A single chunk spanning the lowest to the highest nonzero term.
ChunkyPoly chunky_whole(const Poly& f, const CostModel& model);
/// One length-1 chunk per nonzero term.
ChunkyPoly chunky_terms(const Poly& f);

/// One evaluation of the chunk-size objective.
struct ChunkSizeStep {
  std::uint64_t k = 0;
  std::size_t queue_f = 0, queue_g = 0;
  std::size_t perm_f = 0, perm_g = 0;
  Cost cost = 0;
};

struct ChunkSizeResult {
  std::uint64_t k = 1;
  /// Estimated t(k)*s(k)*k*delta(k) at the returned k.
  Cost cost = 0;
  std::vector<ChunkSizeStep> trace;
};

/// Chunk size k approximately minimizing t(k)*s(k)*k*delta(k) (within a
/// factor 4 of the true minimum).
///
/// Each operand starts with every nonzero term as its own chunk; the gaps
/// between neighbouring terms (empty ones included) sit in a monotone
/// priority queue keyed by the length of the chunk that merging across them
/// would create. k advances to the smallest key, all gaps keyed <= k are
/// merged away (neighbour keys only grow), and the current chunk counts are
/// priced. Dense operands use a bucket array scanned by a forward-only
/// finger; sparse operands use a binary heap and retire gaps keyed above
/// model.cap as permanent boundaries. Ties keep the smaller k.
ChunkSizeResult optimal_chunk_size(const Poly& f, const Poly& g, const CostModel& model,
                                   bool record_trace = false);

struct ChunkyMulStats {
  std::size_t max_heap = 0;
  std::size_t pair_products = 0;
};

/// Product in the chunky representation. Chunk pairs are drawn from a
/// min-heap on e_i + d_j (one entry per chunk of the operand with fewer
/// chunks), so output chunks come out in exponent order; a pair that starts
/// past the reach of the accumulated chunk closes it, otherwise its dense
/// product is added in place. Cancelled ends are trimmed from emitted chunks.
ChunkyPoly chunky_mul(const ChunkyPoly& f, const ChunkyPoly& g, const Field& field,
                      const CostModel& model, ChunkyMulStats* stats = nullptr);

/// Model cost of chunky_mul on these operands: sum over chunk pairs of
/// mult_cost(len f_i, len g_j).
Cost chunky_mult_cost(const ChunkyPoly& f, const ChunkyPoly& g, const CostModel& model);

DensePoly chunky_to_dense(const ChunkyPoly& h, std::uint64_t cap = CostModel{}.cap);
SparsePoly chunky_to_sparse(const ChunkyPoly& h);

enum class ChunkyShape { converted, whole, terms };

/// Chunk size, both conversions and the resulting model cost.
struct ChunkyPlan {
  std::uint64_t chunk_size = 1;
  ChunkyPoly f, g;
  Cost cost = 0;
  ChunkyShape shape = ChunkyShape::converted;
};

/// Picks the chunk size, converts both operands for it, and prices the
/// product. If a single chunk per operand (dense multiplication) or one
/// chunk per term (sparse multiplication) is strictly cheaper, that shape is
/// used instead, so the plan never costs more than either baseline.
ChunkyPlan chunky_plan(const Poly& f, const Poly& g, const CostModel& model);

}  // namespace adaptmul
