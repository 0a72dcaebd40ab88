#include "adaptmul/text_format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "adaptmul/errors.hpp"
#include "adaptmul/field.hpp"

namespace adaptmul {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t j = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > j) words.push_back(line.substr(j, i - j));
  }
  return words;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::uint64_t number(std::string_view word, std::size_t line) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc() || end != word.data() + word.size()) {
    fail(line, "expected a non-negative integer, got '" + std::string(word) + "'");
  }
  return v;
}

}  // namespace

PolyFile parse_poly(std::string_view text) {
  PolyFile out;
  bool have_header = false, have_dense = false;
  std::vector<Term> terms;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto w = split_words(line);
    if (w.empty() || w[0].front() == '#') continue;

    if (!have_header) {
      if (w.size() != 4 || w[0] != "poly" || w[1] != "v1" || w[2] != "mod") {
        fail(line_no, "expected header 'poly v1 mod <p>'");
      }
      out.modulus = number(w[3], line_no);
      if (out.modulus < 2 || out.modulus >= (std::uint64_t{1} << 63) || !is_prime(out.modulus)) {
        fail(line_no, "modulus " + std::string(w[3]) + " is not a prime below 2^63");
      }
      have_header = true;
      continue;
    }
    if (w[0] == "dense") {
      if (have_dense || !terms.empty()) fail(line_no, "only one dense line, and no terms with it");
      have_dense = true;
      std::vector<Coeff> c;
      c.reserve(w.size() - 1);
      for (std::size_t i = 1; i < w.size(); ++i) {
        c.push_back(number(w[i], line_no));
        if (c.back() >= out.modulus) fail(line_no, "coefficient is not reduced mod p");
      }
      out.poly = DensePoly(std::move(c));
    } else if (w[0] == "term") {
      if (have_dense) fail(line_no, "term line after a dense line");
      if (w.size() != 3) fail(line_no, "expected 'term <coeff> <exp>'");
      const Coeff c = number(w[1], line_no);
      const Exponent e = number(w[2], line_no);
      if (c == 0 || c >= out.modulus) fail(line_no, "term coefficient must be in [1, p)");
      if (!terms.empty() && e <= terms.back().exp) fail(line_no, "exponents must strictly increase");
      terms.push_back({c, e});
    } else {
      fail(line_no, "unknown line kind '" + std::string(w[0]) + "'");
    }
  }
  if (!have_header) throw ParseError("missing 'poly v1 mod <p>' header");
  if (!have_dense) out.poly = SparsePoly(std::move(terms));
  return out;
}

std::string serialize_poly(const PolyFile& file) {
  std::ostringstream os;
  os << "poly v1 mod " << file.modulus << "\n";
  if (const auto* d = std::get_if<DensePoly>(&file.poly)) {
    os << "dense";
    for (Coeff c : d->coeffs()) os << ' ' << c;
    os << "\n";
  } else {
    for (const Term& t : std::get<SparsePoly>(file.poly).terms()) {
      os << "term " << t.coeff << ' ' << t.exp << "\n";
    }
  }
  return os.str();
}

PolyFile read_poly_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_poly(buf.str());
}

void write_poly_file(const std::string& path, const PolyFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_poly(file);
  if (!out) throw std::runtime_error("error writing " + path);
}

}  // namespace adaptmul
