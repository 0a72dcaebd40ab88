#include "adaptmul/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "adaptmul/errors.hpp"
#include "adaptmul/text_format.hpp"

namespace adaptmul {

namespace {

class ModulusMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    parts.push_back(s.substr(start, at - start));
    if (at == std::string_view::npos) return parts;
    start = at + 1;
  }
}

std::pair<std::string_view, std::string_view> key_value(std::string_view word) {
  const std::size_t eq = word.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ParseError("expected key=value, got '" + std::string(word) + "'");
  }
  return {word.substr(0, eq), word.substr(eq + 1)};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
}

struct ModelFlags {
  std::string kind = "karatsuba";
  std::uint64_t threshold = CostModel{}.threshold;
  std::uint64_t cap = CostModel{}.cap;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", kind, "Cost model")
        ->check(CLI::IsMember({"schoolbook", "karatsuba", "fftlike"}))
        ->capture_default_str();
    cmd->add_option("--threshold", threshold, "Karatsuba schoolbook threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--cap", cap, "Largest dense length")->check(CLI::PositiveNumber)->capture_default_str();
  }

  CostModel build() const {
    CostModel m;
    m.kind = parse_model_kind(kind);
    m.threshold = threshold;
    m.cap = cap;
    return m;
  }
};

std::string format_number(double v) {
  if (v == kInfiniteCost) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<BenchCase> parse_bench_matrix(std::string_view text) {
  std::vector<BenchCase> cases;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    std::istringstream words{std::string(line)};
    std::vector<std::string> w;
    for (std::string word; words >> word;) w.push_back(word);
    if (w.empty() || w[0].front() == '#') continue;
    try {
      BenchCase bc;
      bc.name = w[0];
      if (bc.name.find('=') != std::string::npos) throw ParseError("first field must be the case name");
      std::vector<std::pair<std::string_view, std::string_view>> shared, only_a, only_b;
      bool b_seed = false;
      for (std::size_t i = 1; i < w.size(); ++i) {
        const auto [key, value] = key_value(w[i]);
        if (key == "algos") {
          for (std::string_view name : split(value, ',')) {
            try {
              bc.strategies.push_back(parse_strategy(name));
            } catch (const ArgumentError& e) {
              throw ParseError(e.what());
            }
          }
        } else if (key.starts_with("a.")) {
          only_a.emplace_back(key.substr(2), value);
        } else if (key.starts_with("b.")) {
          only_b.emplace_back(key.substr(2), value);
          b_seed = b_seed || key.substr(2) == "seed";
        } else {
          shared.emplace_back(key, value);
        }
      }
      for (const auto& [k, v] : shared) {
        set_instance_param(bc.a, k, v);
        set_instance_param(bc.b, k, v);
      }
      for (const auto& [k, v] : only_a) set_instance_param(bc.a, k, v);
      for (const auto& [k, v] : only_b) set_instance_param(bc.b, k, v);
      if (!b_seed) bc.b.seed = bc.a.seed + 1;
      if (bc.strategies.empty()) {
        bc.strategies.assign(kConcreteStrategies.begin(), kConcreteStrategies.end());
        bc.strategies.push_back(Strategy::automatic);
      }
      cases.push_back(std::move(bc));
    } catch (const ParseError& e) {
      throw ParseError("matrix line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cases;
}

namespace {

std::string bench_table(const std::vector<BenchCase>& cases, const CostModel& model) {
  std::ostringstream os;
  os << kBenchHeader << "\n";
  for (const BenchCase& bc : cases) {
    if (bc.a.modulus != bc.b.modulus) throw ModulusMismatch("case " + bc.name + ": moduli differ");
    const Poly f = generate(bc.a), g = generate(bc.b);
    const Field field(bc.a.modulus);
    for (Strategy s : bc.strategies) {
      os << bc.name << '\t';
      try {
        const auto start = std::chrono::steady_clock::now();
        const MultiplyResult r = multiply(f, g, field, s, model);
        const auto stop = std::chrono::steady_clock::now();
        const MultiplyReport& rep = r.report;
        os << to_string(s);
        if (s == Strategy::automatic) os << ':' << to_string(rep.chosen);
        const auto& cost = rep.costs[static_cast<std::size_t>(rep.chosen)];
        char wall[32];
        std::snprintf(wall, sizeof wall, "%.3f",
                      std::chrono::duration<double, std::milli>(stop - start).count());
        os << '\t' << (cost ? format_number(*cost) : "na") << '\t' << rep.mul_count << '\t'
           << rep.add_count << '\t' << wall << "\n";
      } catch (const ArgumentError&) {
        os << to_string(s) << "\tna\tna\tna\tna\n";
      }
    }
  }
  return os.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive univariate polynomial multiplication over Z/pZ", "adaptmul"};
  app.require_subcommand(1);

  CLI::App* gen = app.add_subcommand("gen", "Generate a random structured polynomial");
  std::string family;
  std::vector<std::string> params;
  std::optional<std::uint64_t> gen_seed, gen_mod;
  std::string gen_out = "-";
  gen->add_option("family", family, "random-dense | random-sparse | chunky | spaced | combined")->required();
  gen->add_option("params", params, "key=value instance parameters");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--mod", gen_mod, "Prime modulus");
  gen->add_option("--out", gen_out, "Output file ('-' for stdout)")->capture_default_str();

  CLI::App* mul = app.add_subcommand("mul", "Multiply two polynomial files");
  std::string in_a, in_b, algo = "auto", mul_out = "-", stats_path;
  bool show_explain = false;
  ModelFlags mul_model;
  mul->add_option("a", in_a, "First operand file")->required();
  mul->add_option("b", in_b, "Second operand file")->required();
  mul->add_option("--algo", algo, "Strategy")
      ->check(CLI::IsMember({"dense", "sparse", "chunky", "eqspace", "combined", "auto"}))
      ->capture_default_str();
  mul_model.attach(mul);
  mul->add_option("--out", mul_out, "Product file ('-' for stdout)")->capture_default_str();
  mul->add_option("--stats", stats_path, "Write the key=value report line here ('-' for stdout)");
  mul->add_flag("--explain", show_explain, "Print a readable report to stderr");

  CLI::App* bench = app.add_subcommand("bench", "Run a benchmark matrix");
  std::string matrix, bench_out = "-";
  ModelFlags bench_model;
  bench->add_option("matrix", matrix, "Matrix file")->required();
  bench_model.attach(bench);
  bench->add_option("--out", bench_out, "Table file ('-' for stdout)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (gen->parsed()) {
      InstanceSpec spec;
      spec.family = parse_family(family);
      for (const std::string& p : params) {
        const auto [k, v] = key_value(p);
        set_instance_param(spec, k, v);
      }
      if (gen_seed) spec.seed = *gen_seed;
      if (gen_mod) spec.modulus = *gen_mod;
      write_text(gen_out, serialize_poly({spec.modulus, generate(spec)}), out);
    } else if (mul->parsed()) {
      const PolyFile a = read_poly_file(in_a);
      const PolyFile b = read_poly_file(in_b);
      if (a.modulus != b.modulus) {
        throw ModulusMismatch("moduli differ: " + std::to_string(a.modulus) + " vs " +
                              std::to_string(b.modulus));
      }
      const MultiplyResult r =
          multiply(a.poly, b.poly, Field(a.modulus), parse_strategy(algo), mul_model.build());
      write_text(mul_out, serialize_poly({a.modulus, r.product}), out);
      if (!stats_path.empty()) write_text(stats_path, to_record(r.report) + "\n", out);
      if (show_explain) err << explain(r.report);
    } else if (bench->parsed()) {
      write_text(bench_out, bench_table(parse_bench_matrix(read_text(matrix)), bench_model.build()), out);
    }
  } catch (const ParseError& e) {
    err << "adaptmul: parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ModulusMismatch& e) {
    err << "adaptmul: " << e.what() << "\n";
    return kExitModulus;
  } catch (const CapacityError& e) {
    err << "adaptmul: capacity exceeded: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    err << "adaptmul: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace adaptmul
