#include "adaptmul/instance.hpp"

#include <charconv>
#include <map>
#include <random>
#include <string>
#include <unordered_set>

#include "adaptmul/errors.hpp"
#include "adaptmul/field.hpp"

namespace adaptmul {

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::random_dense: return "random-dense";
    case Family::random_sparse: return "random-sparse";
    case Family::chunky: return "chunky";
    case Family::spaced: return "spaced";
    case Family::combined: return "combined";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::random_dense, Family::random_sparse, Family::chunky, Family::spaced,
                   Family::combined}) {
    if (name == to_string(f)) return f;
  }
  throw ParseError("unknown instance family '" + std::string(name) + "'");
}

void set_instance_param(InstanceSpec& spec, std::string_view key_in, std::string_view value) {
  std::string key(key_in);
  for (char& c : key) {
    if (c == '-') c = '_';
  }
  if (key == "family") {
    spec.family = parse_family(value);
    return;
  }
  if (key == "repr") {
    if (value == "dense") {
      spec.dense = true;
    } else if (value == "sparse") {
      spec.dense = false;
    } else {
      throw ParseError("repr must be dense or sparse");
    }
    return;
  }
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw ParseError("bad value for " + key + ": '" + std::string(value) + "'");
  }
  if (key == "seed") {
    spec.seed = v;
  } else if (key == "mod") {
    spec.modulus = v;
  } else if (key == "degree") {
    spec.degree = v;
  } else if (key == "terms" || key == "t") {
    spec.terms = v;
  } else if (key == "chunks") {
    spec.chunks = v;
  } else if (key == "chunk_len") {
    spec.chunk_len = v;
  } else if (key == "gap_len") {
    spec.gap_len = v;
  } else if (key == "k" || key == "spacing") {
    spec.spacing = v;
  } else if (key == "core_len") {
    spec.core_len = v;
  } else if (key == "noise") {
    spec.noise = v;
  } else {
    throw ParseError("unknown instance parameter '" + key + "'");
  }
}

namespace {

class Draw {
 public:
  Draw(std::uint64_t seed, std::uint64_t p) : rng_(seed), p_(p) {}
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  Coeff any() { return rng_() % p_; }
  Coeff nonzero() { return 1 + rng_() % (p_ - 1); }

 private:
  std::mt19937_64 rng_;
  std::uint64_t p_;
};

void require(bool ok, const char* what) {
  if (!ok) throw ArgumentError(what);
}

// `count` fresh exponents in [0, top] rejected by `taken`, with random
// nonzero coefficients.
template <typename Taken>
void scatter(std::map<Exponent, Coeff>& terms, Draw& draw, std::uint64_t count, Exponent top,
             std::uint64_t free_slots, Taken taken) {
  require(count <= free_slots, "not enough free exponents for the requested terms");
  while (count > 0) {
    const Exponent e = draw.below(top + 1);
    if (taken(e) || terms.count(e) != 0) continue;
    terms[e] = draw.nonzero();
    --count;
  }
}

}  // namespace

Poly generate(const InstanceSpec& spec) {
  const Field field(spec.modulus);  // validates the modulus
  Draw draw(spec.seed, spec.modulus);
  std::map<Exponent, Coeff> terms;

  switch (spec.family) {
    case Family::random_dense: {
      for (Exponent e = 0; e < spec.degree; ++e) {
        const Coeff c = draw.any();
        if (c != 0) terms[e] = c;
      }
      terms[spec.degree] = draw.nonzero();
      break;
    }
    case Family::random_sparse: {
      require(spec.terms >= 1, "random-sparse needs at least one term");
      require(spec.terms - 1 <= spec.degree, "more terms than exponents up to the degree");
      if (spec.terms * 2 > spec.degree + 1) {
        std::vector<Exponent> all(spec.degree + 1);
        for (Exponent e = 0; e <= spec.degree; ++e) all[e] = e;
        for (std::size_t i = 0; i < spec.terms; ++i) {
          std::swap(all[i], all[i + draw.below(all.size() - i)]);
          terms[all[i]] = draw.nonzero();
        }
      } else {
        scatter(terms, draw, spec.terms, spec.degree, spec.degree + 1, [](Exponent) { return false; });
      }
      break;
    }
    case Family::chunky: {
      require(spec.chunks >= 1 && spec.chunk_len >= 1, "chunky needs chunks >= 1 and chunk_len >= 1");
      for (std::uint64_t i = 0; i < spec.chunks; ++i) {
        const Exponent base = i * (spec.chunk_len + spec.gap_len);
        for (std::uint64_t j = 0; j < spec.chunk_len; ++j) terms[base + j] = draw.nonzero();
      }
      break;
    }
    case Family::spaced: {
      require(spec.spacing >= 1 && spec.core_len >= 1, "spaced needs k >= 1 and core_len >= 1");
      const Exponent shift = draw.below(spec.spacing);
      const Exponent top = shift + (spec.core_len - 1) * spec.spacing;
      for (std::uint64_t i = 0; i < spec.core_len; ++i) terms[shift + i * spec.spacing] = draw.nonzero();
      const std::uint64_t off_class = top + 1 - spec.core_len;
      scatter(terms, draw, spec.noise, top, off_class,
              [&](Exponent e) { return e % spec.spacing == shift % spec.spacing; });
      break;
    }
    case Family::combined: {
      require(spec.chunks >= 1 && spec.spacing >= 1 && spec.core_len >= 1,
              "combined needs chunks, k and core_len >= 1");
      Exponent base = 0, top = 0;
      for (std::uint64_t i = 0; i < spec.chunks; ++i) {
        const Exponent shift = draw.below(spec.spacing);
        for (std::uint64_t j = 0; j < spec.core_len; ++j) {
          terms[base + shift + j * spec.spacing] = draw.nonzero();
        }
        top = base + shift + (spec.core_len - 1) * spec.spacing;
        base = top + spec.gap_len + 1;
      }
      scatter(terms, draw, spec.noise, top, top + 1 - terms.size(), [](Exponent) { return false; });
      break;
    }
  }

  if (!spec.dense_output()) {
    std::vector<Term> out;
    out.reserve(terms.size());
    for (const auto& [e, c] : terms) out.push_back({c, e});
    return SparsePoly(std::move(out));
  }
  std::vector<Coeff> out(terms.rbegin()->first + 1, 0);
  for (const auto& [e, c] : terms) out[e] = c;
  return DensePoly(std::move(out));
}

}  // namespace adaptmul
