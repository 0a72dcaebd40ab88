#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "adaptmul/poly.hpp"

namespace adaptmul {

/// A polynomial together with the prime it lives over.
struct PolyFile {
  std::uint64_t modulus = 0;
  Poly poly;

  friend bool operator==(const PolyFile&, const PolyFile&) = default;
};

/// Text form:
///
///   poly v1 mod <p>
///   dense <c0> <c1> ... <cd>        (one line, or)
///   term <coeff> <exp>              (one per term, exponents increasing)
///
/// Blank lines and lines starting with '#' are skipped. A header with no
/// body is the zero sparse polynomial; a bare `dense` line is the zero dense
/// one. Throws ParseError (with the line number) on malformed input,
/// non-canonical coefficients, zero term coefficients, unordered exponents or
/// a modulus that is not a prime below 2^63.
PolyFile parse_poly(std::string_view text);

/// Inverse of parse_poly for normalized polynomials.
std::string serialize_poly(const PolyFile& file);

/// Throws std::runtime_error if the file cannot be read or written.
PolyFile read_poly_file(const std::string& path);
void write_poly_file(const std::string& path, const PolyFile& file);

}  // namespace adaptmul
