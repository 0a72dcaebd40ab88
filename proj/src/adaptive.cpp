#include "adaptmul/adaptive.hpp"

#include <cstdio>
#include <sstream>

#include "adaptmul/chunky.hpp"
#include "adaptmul/combined.hpp"
#include "adaptmul/equal_spaced.hpp"
#include "adaptmul/errors.hpp"

namespace adaptmul {

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::dense: return "dense";
    case Strategy::sparse: return "sparse";
    case Strategy::chunky: return "chunky";
    case Strategy::eqspace: return "eqspace";
    case Strategy::combined: return "combined";
    case Strategy::automatic: return "auto";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::dense, Strategy::sparse, Strategy::chunky, Strategy::eqspace,
                     Strategy::combined, Strategy::automatic}) {
    if (name == to_string(s)) return s;
  }
  throw ArgumentError("unknown strategy '" + std::string(name) + "'");
}

namespace {

std::size_t slot(Strategy s) { return static_cast<std::size_t>(s); }

Poly zero_like(bool dense) { return dense ? Poly(DensePoly{}) : Poly(SparsePoly{}); }

Poly shape(DensePoly p, bool dense) { return dense ? Poly(std::move(p)) : Poly(to_sparse(p)); }
Poly shape(SparsePoly p, bool dense, std::uint64_t cap) {
  return dense ? Poly(to_dense(p, cap)) : Poly(std::move(p));
}

Cost dense_cost(const Poly& f, const Poly& g, const CostModel& model) {
  const std::uint64_t n = degree(f) + 1, m = degree(g) + 1;
  if (n > model.cap || m > model.cap || n + m - 1 > model.cap) return kInfiniteCost;
  return model.mult_cost(n, m);
}

}  // namespace

MultiplyResult multiply(const Poly& f, const Poly& g, const Field& field, Strategy strategy,
                        const CostModel& model) {
  MultiplyResult out;
  MultiplyReport& rep = out.report;
  rep.requested = strategy;
  rep.model = model;
  const bool both_dense = std::holds_alternative<DensePoly>(f) && std::holds_alternative<DensePoly>(g);
  rep.dense_output = both_dense;
  if (strategy == Strategy::eqspace && !both_dense) {
    throw ArgumentError("eqspace strategy needs dense operands");
  }
  if (is_zero(f) || is_zero(g)) {
    rep.trivial = true;
    rep.chosen = strategy == Strategy::automatic ? Strategy::dense : strategy;
    out.product = zero_like(both_dense);
    return out;
  }

  const bool pick = strategy == Strategy::automatic;
  auto wanted = [&](Strategy s) { return pick || strategy == s; };

  if (wanted(Strategy::dense)) rep.costs[slot(Strategy::dense)] = dense_cost(f, g, model);
  if (wanted(Strategy::sparse)) {
    rep.costs[slot(Strategy::sparse)] =
        static_cast<double>(term_count(f)) * static_cast<double>(term_count(g));
  }

  std::optional<CombinedPlan> plan;
  if (wanted(Strategy::chunky) || wanted(Strategy::combined)) {
    try {
      if (wanted(Strategy::combined)) {
        plan = combined_plan(f, g, model);
        rep.costs[slot(Strategy::combined)] = plan->cost;
      } else {
        plan.emplace();
        plan->chunky = chunky_plan(f, g, model);
      }
      if (wanted(Strategy::chunky)) rep.costs[slot(Strategy::chunky)] = plan->chunky.cost;
    } catch (const CapacityError&) {
      if (!pick) throw;
      plan.reset();
    }
  }

  std::optional<EqualSpacedPoly> es_f, es_g;
  if (wanted(Strategy::eqspace) && both_dense) {
    es_f = es_convert(std::get<DensePoly>(f));
    es_g = es_convert(std::get<DensePoly>(g));
    rep.costs[slot(Strategy::eqspace)] = es_mult_cost(*es_f, *es_g, model);
  }

  rep.chosen = strategy;
  if (pick) {
    std::optional<Cost> best;
    for (Strategy s : kConcreteStrategies) {
      const auto& c = rep.costs[slot(s)];
      if (c && (!best || *c < *best)) {
        best = c;
        rep.chosen = s;
      }
    }
  }

  const Field cf = counted(field);
  switch (rep.chosen) {
    case Strategy::dense: {
      DensePoly h = dense_mul(to_dense(f, model.cap), to_dense(g, model.cap), cf, model);
      out.product = shape(std::move(h), both_dense);
      break;
    }
    case Strategy::sparse: {
      SparsePoly h = sparse_mul(to_sparse(f), to_sparse(g), cf);
      out.product = shape(std::move(h), both_dense, model.cap);
      break;
    }
    case Strategy::chunky: {
      rep.chunk_size = plan->chunky.chunk_size;
      rep.spacing_f = rep.spacing_g = 1;
      const ChunkyPoly h = chunky_mul(plan->chunky.f, plan->chunky.g, cf, model);
      out.product = both_dense ? Poly(chunky_to_dense(h, model.cap)) : Poly(chunky_to_sparse(h));
      break;
    }
    case Strategy::eqspace: {
      rep.spacing_f = es_f->spacing;
      rep.spacing_g = es_g->spacing;
      rep.noise_f = es_f->noise.term_count();
      rep.noise_g = es_g->noise.term_count();
      EsMulStats stats;
      out.product = es_mul(*es_f, *es_g, cf, model, &stats);
      rep.collisions = stats.collisions;
      break;
    }
    case Strategy::combined: {
      rep.chunk_size = plan->chunky.chunk_size;
      rep.spacing_f = plan->f.spacing;
      rep.spacing_g = plan->g.spacing;
      rep.noise_f = plan->f.noise.term_count();
      rep.noise_g = plan->g.noise.term_count();
      CombinedMulStats stats;
      out.product = combined_mul(plan->f, plan->g, cf, model,
                                 both_dense ? Target::dense : Target::sparse, &stats);
      rep.collisions = stats.collisions;
      break;
    }
    case Strategy::automatic:
      break;
  }
  rep.mul_count = cf.counts().mul_count;
  rep.add_count = cf.counts().add_count;
  return out;
}

namespace {

std::string format_cost(const std::optional<Cost>& c) {
  if (!c) return "na";
  if (*c == kInfiniteCost) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", *c);
  return buf;
}

}  // namespace

std::string explain(const MultiplyReport& r) {
  if (r.trivial) return "trivial: zero operand\n";
  std::ostringstream os;
  os << "strategy: " << to_string(r.chosen) << " (requested " << to_string(r.requested) << ")\n";
  os << "model: " << to_string(r.model.kind) << " threshold=" << r.model.threshold
     << " cap=" << r.model.cap << "\n";
  os << "model costs:\n";
  for (Strategy s : kConcreteStrategies) {
    os << "  " << to_string(s) << ": " << format_cost(r.costs[slot(s)]);
    if (s == r.chosen) os << "  <- chosen";
    os << "\n";
  }
  if (r.chunk_size != 0) os << "chunk size: " << r.chunk_size << "\n";
  if (r.spacing_f != 0) {
    os << "spacing: " << r.spacing_f << " x " << r.spacing_g << "; noise terms: " << r.noise_f
       << " + " << r.noise_g << "\n";
  }
  os << "ring ops: " << r.mul_count << " mul, " << r.add_count << " add\n";
  if (r.chosen == Strategy::eqspace || r.chosen == Strategy::combined) {
    os << "grid collisions: " << r.collisions << "\n";
  }
  os << "output: " << (r.dense_output ? "dense" : "sparse") << "\n";
  return os.str();
}

std::string to_record(const MultiplyReport& r) {
  std::ostringstream os;
  os << "strategy=" << to_string(r.chosen) << " requested=" << to_string(r.requested)
     << " trivial=" << (r.trivial ? 1 : 0) << " model=" << to_string(r.model.kind)
     << " threshold=" << r.model.threshold << " cap=" << r.model.cap;
  for (Strategy s : kConcreteStrategies) os << " cost." << to_string(s) << "=" << format_cost(r.costs[slot(s)]);
  os << " chunk_size=" << r.chunk_size << " spacing_f=" << r.spacing_f << " spacing_g=" << r.spacing_g
     << " noise_f=" << r.noise_f << " noise_g=" << r.noise_g << " mul_count=" << r.mul_count
     << " add_count=" << r.add_count << " collisions=" << r.collisions
     << " output=" << (r.dense_output ? "dense" : "sparse");
  return os.str();
}

}  // namespace adaptmul
