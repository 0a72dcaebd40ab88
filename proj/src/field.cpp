#include "adaptmul/field.hpp"

#include <string>

#include "adaptmul/errors.hpp"

namespace adaptmul {

namespace {

using u64 = std::uint64_t;
using detail::u128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for all n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field::Field(std::uint64_t p) : p_(p), small_(p < (1ull << 32)) {
  if (p < 2 || p >= (1ull << 63)) {
    throw ArgumentError("modulus " + std::to_string(p) + " out of range [2, 2^63)");
  }
  if (!is_prime(p)) throw ArgumentError("modulus " + std::to_string(p) + " is not prime");
}

Field make_field(std::uint64_t p) { return Field(p); }

Field counted(const Field& field) {
  Field result = field;
  result.counter_ = std::make_shared<OpCounter>();
  return result;
}

}  // namespace adaptmul
