#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "adaptmul/cost_model.hpp"
#include "adaptmul/field.hpp"
#include "adaptmul/poly.hpp"

namespace adaptmul {

enum class Strategy { dense, sparse, chunky, eqspace, combined, automatic };

/// The five concrete strategies in tie-break order.
inline constexpr std::array<Strategy, 5> kConcreteStrategies = {
    Strategy::dense, Strategy::sparse, Strategy::chunky, Strategy::eqspace, Strategy::combined};

/// CLI names: dense, sparse, chunky, eqspace, combined, auto.
std::string_view to_string(Strategy s) noexcept;
/// Throws ArgumentError on an unknown name.
Strategy parse_strategy(std::string_view name);

struct MultiplyReport {
  Strategy requested = Strategy::automatic;
  Strategy chosen = Strategy::dense;
  bool trivial = false;  // a zero operand short-circuited everything
  CostModel model;
  /// Model cost of each concrete strategy that was priced, indexed like
  /// kConcreteStrategies. Unpriced or unavailable ones are empty.
  std::array<std::optional<Cost>, 5> costs;
  std::uint64_t chunk_size = 0;
  std::uint64_t spacing_f = 0, spacing_g = 0;
  std::size_t noise_f = 0, noise_g = 0;
  std::uint64_t mul_count = 0, add_count = 0;
  std::size_t collisions = 0;
  bool dense_output = true;

  friend bool operator==(const MultiplyReport&, const MultiplyReport&) = default;
};

struct MultiplyResult {
  Poly product;
  MultiplyReport report;
};

/// Multiplies with the requested strategy, or with the cheapest by model
/// cost under `automatic` (ties go to the earlier strategy in
/// kConcreteStrategies). The product is dense when both inputs are dense and
/// sparse otherwise. eqspace needs dense inputs (ArgumentError otherwise).
/// Ring operations are counted on a private copy of `field`.
MultiplyResult multiply(const Poly& f, const Poly& g, const Field& field, Strategy strategy,
                        const CostModel& model);

/// Multi-line human summary; identical reports render identically.
std::string explain(const MultiplyReport& report);

/// Single line of space-separated key=value pairs.
std::string to_record(const MultiplyReport& report);

}  // namespace adaptmul
