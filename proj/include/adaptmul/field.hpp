#pragma once

#include <cstdint>
#include <memory>

namespace adaptmul {

using Coeff = std::uint64_t;

namespace detail {
__extension__ using u128 = unsigned __int128;
}  // namespace detail

/// Ring-operation tally. Multiplications and additions (including
/// subtractions and negations) are kept apart.
struct OpCounter {
  std::uint64_t mul_count = 0;
  std::uint64_t add_count = 0;

  void reset() noexcept { mul_count = add_count = 0; }
};

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

/// Arithmetic in Z/pZ for a word-sized prime 2 <= p < 2^63. Elements are
/// canonical residues in [0, p).
///
/// A field obtained from counted() carries its own OpCounter; copies of that
/// field share it, fields from separate counted() calls never do.
class Field {
 public:
  explicit Field(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }

  Coeff add(Coeff a, Coeff b) const noexcept {
    if (counter_) ++counter_->add_count;
    Coeff s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const noexcept {
    if (counter_) ++counter_->add_count;
    return a >= b ? a - b : a + (p_ - b);
  }
  Coeff neg(Coeff a) const noexcept {
    if (counter_) ++counter_->add_count;
    return a == 0 ? 0 : p_ - a;
  }
  Coeff mul(Coeff a, Coeff b) const noexcept {
    if (counter_) ++counter_->mul_count;
    if (small_) return (a * b) % p_;
    return static_cast<Coeff>((static_cast<detail::u128>(a) * b) % p_);
  }
  /// a + b*c, counted as one multiplication and one addition.
  Coeff mul_add(Coeff a, Coeff b, Coeff c) const noexcept { return add(a, mul(b, c)); }

  /// Canonical residue of an arbitrary word; not a ring operation.
  Coeff reduce(std::uint64_t x) const noexcept { return x % p_; }

  bool is_counted() const noexcept { return static_cast<bool>(counter_); }
  /// Zero counts for an uncounted field.
  OpCounter counts() const noexcept { return counter_ ? *counter_ : OpCounter{}; }
  void reset_counts() const noexcept {
    if (counter_) counter_->reset();
  }

  friend bool operator==(const Field& a, const Field& b) noexcept { return a.p_ == b.p_; }

 private:
  friend Field counted(const Field& field);

  std::uint64_t p_;
  bool small_;
  std::shared_ptr<OpCounter> counter_;
};

/// Throws ArgumentError when p is out of range or composite.
Field make_field(std::uint64_t p);

/// Same arithmetic as `field`, with a fresh counter attached.
Field counted(const Field& field);

}  // namespace adaptmul
