#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "adaptmul/poly.hpp"

namespace adaptmul {

enum class Family { random_dense, random_sparse, chunky, spaced, combined };

std::string_view to_string(Family f) noexcept;
/// Accepts random-dense, random-sparse, chunky, spaced, combined.
Family parse_family(std::string_view name);

/// Recipe for one random polynomial. Only the fields of the chosen family
/// matter:
///   random-dense   degree
///   random-sparse  degree, terms
///   chunky         chunks, chunk_len, gap_len
///   spaced         spacing, core_len, noise
///   combined       chunks, spacing, core_len, gap_len, noise
struct InstanceSpec {
  Family family = Family::random_dense;
  std::uint64_t seed = 1;
  std::uint64_t modulus = 9973;
  std::uint64_t degree = 64;
  std::uint64_t terms = 8;
  std::uint64_t chunks = 4;
  std::uint64_t chunk_len = 8;
  std::uint64_t gap_len = 32;
  std::uint64_t spacing = 10;
  std::uint64_t core_len = 5;
  std::uint64_t noise = 0;
  /// Output representation; defaults to sparse for random-sparse and dense
  /// for everything else.
  std::optional<bool> dense;

  bool dense_output() const noexcept { return dense.value_or(family != Family::random_sparse); }
};

/// Sets one field from `key=value` text. Keys are family, seed, mod, degree,
/// terms, chunks, chunk_len, gap_len, k (or spacing), core_len, noise and
/// repr (dense|sparse); dashes and underscores are interchangeable. Throws
/// ParseError on unknown keys or bad values.
void set_instance_param(InstanceSpec& spec, std::string_view key, std::string_view value);

/// Deterministic in the spec, seed included. Throws ArgumentError if the
/// spec cannot be realized (e.g. more sparse terms than exponents).
Poly generate(const InstanceSpec& spec);

}  // namespace adaptmul
