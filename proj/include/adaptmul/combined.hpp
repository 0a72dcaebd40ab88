#pragma once

#include <cstdint>
#include <vector>

#include "adaptmul/chunky.hpp"
#include "adaptmul/cost_model.hpp"
#include "adaptmul/equal_spaced.hpp"
#include "adaptmul/field.hpp"
#include "adaptmul/poly.hpp"

namespace adaptmul {

/// One dense chunk composed with the shared spacing: (core o x^k) * x^offset.
struct SpacedChunk {
  DensePoly core;
  Exponent offset = 0;

  friend bool operator==(const SpacedChunk&, const SpacedChunk&) = default;
};

/// f = sum_i (core_i o x^k) * x^offset_i + noise, chunk spans disjoint and
/// increasing, every core with a nonzero constant term.
struct ChunkedSpacedPoly {
  std::vector<SpacedChunk> chunks;
  std::uint64_t spacing = 1;
  SparsePoly noise;

  bool is_zero() const noexcept { return chunks.empty() && noise.is_zero(); }
  std::size_t term_count() const noexcept;

  friend bool operator==(const ChunkedSpacedPoly&, const ChunkedSpacedPoly&) = default;
};

struct SpacingOptions {
  /// Largest number of candidate spacings examined before giving up and
  /// using spacing 1. Zero means max(k_init, 4096), which covers every
  /// candidate.
  std::uint64_t scan_budget = 0;
};

/// Shared-spacing search over the chunks of c. Starts from the smallest
/// k_bound over chunks holding at least two terms and walks k down; at each
/// k every chunk runs its own majority vote, and k is accepted once the
/// off-class terms of all chunks together number at most log2 of the total
/// term count. Those terms become the noise; each chunk's offset absorbs its
/// own residue. Spacing 1 (the chunks unchanged) when nothing qualifies.
ChunkedSpacedPoly spaced_from_chunky(const ChunkyPoly& c, const SpacingOptions& options = {});

/// The same chunks with spacing 1 and no noise.
ChunkedSpacedPoly unspaced(const ChunkyPoly& c);

/// Chunky conversion for chunk size k followed by the shared-spacing search.
ChunkedSpacedPoly combined_convert(const Poly& f, std::uint64_t chunk_size,
                                   const CostModel& model, const SpacingOptions& options = {});

DensePoly combined_to_dense(const ChunkedSpacedPoly& f, std::uint64_t cap = CostModel{}.cap);
SparsePoly combined_to_sparse(const ChunkedSpacedPoly& f);

struct CombinedMulStats {
  std::size_t max_heap = 0;
  std::size_t pair_products = 0;
  std::size_t grid_products = 0;
  std::size_t collisions = 0;
};

enum class Target { dense, sparse };

/// Exact product. Chunk pairs come off a min-heap on offset sums; each pair
/// runs the spaced piece grid and its coefficients are added into the output
/// at absolute positions. A dense target is one buffer; a sparse target
/// buffers the currently open region and emits it in order once the next
/// pair starts beyond it. Noise products go through sparse_mul.
Poly combined_mul(const ChunkedSpacedPoly& f, const ChunkedSpacedPoly& g, const Field& field,
                  const CostModel& model, Target target, CombinedMulStats* stats = nullptr);

/// Sum over chunk pairs of spaced_grid_cost plus the noise terms priced as
/// in es_mult_cost.
Cost combined_mult_cost(const ChunkedSpacedPoly& f, const ChunkedSpacedPoly& g,
                        const CostModel& model);

struct CombinedPlan {
  ChunkyPlan chunky;
  ChunkedSpacedPoly f, g;
  Cost cost = 0;
};

/// Chunky plan, then spacing search on each operand. Of the four ways to
/// keep or drop each operand's spacing, the cheapest by model cost is used,
/// so the plan never costs more than the chunky plan it started from.
CombinedPlan combined_plan(const Poly& f, const Poly& g, const CostModel& model,
                           const SpacingOptions& options = {});

}  // namespace adaptmul
