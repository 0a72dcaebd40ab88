#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "adaptmul/cli.hpp"
#include "adaptmul/errors.hpp"
#include "doctest.h"

using namespace adaptmul;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "adaptmul");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("adaptmul_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

 private:
  fs::path dir_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("gen is deterministic and honours the family contract") {
  const Run a = run({"gen", "spaced", "k=10", "core_len=5", "noise=0", "--seed", "1"});
  const Run b = run({"gen", "spaced", "k=10", "core_len=5", "noise=0", "--seed", "1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("poly v1 mod 9973\ndense ", 0) == 0);

  const Run one = run({"gen", "random-sparse", "terms=1", "--seed", "8"});
  CHECK(one.code == 0);
  CHECK(std::count(one.out.begin(), one.out.end(), '\n') == 2);
  CHECK(one.out.find("\nterm ") != std::string::npos);

  CHECK(run({"gen", "fractal"}).code == kExitParse);
  CHECK(run({"gen", "chunky", "chunks"}).code == kExitParse);
}

TEST_CASE("mul agrees across strategies byte for byte") {
  Scratch s;
  CHECK(run({"gen", "combined", "chunks=4", "k=3", "core_len=12", "gap_len=40", "noise=1", "--seed", "3",
             "--out", s.path("a.poly")})
            .code == 0);
  CHECK(run({"gen", "chunky", "chunks=5", "chunk_len=7", "gap_len=30", "--seed", "4", "--out",
             s.path("b.poly")})
            .code == 0);
  const Run dense = run({"mul", s.path("a.poly"), s.path("b.poly"), "--algo", "dense"});
  REQUIRE(dense.code == 0);
  for (const char* algo : {"auto", "sparse", "chunky", "eqspace", "combined"}) {
    const Run r = run({"mul", s.path("a.poly"), s.path("b.poly"), "--algo", algo, "--model", "karatsuba"});
    CHECK(r.code == 0);
    CHECK(r.out == dense.out);
  }
}

TEST_CASE("multiplying by one echoes the normalized input") {
  Scratch s;
  const std::string one = s.write("one.poly", "poly v1 mod 97\ndense 1\n");
  const std::string f = s.write("f.poly", "# input\npoly v1 mod 97\ndense 3 0 4 0 0\n");
  const Run r = run({"mul", f, one, "--out", s.path("h.poly"), "--stats", s.path("stats.txt")});
  CHECK(r.code == 0);
  CHECK(slurp(s.path("h.poly")) == "poly v1 mod 97\ndense 3 0 4\n");
  const std::string stats = slurp(s.path("stats.txt"));
  CHECK(stats.find("strategy=") == 0);
  CHECK(std::count(stats.begin(), stats.end(), '\n') == 1);
}

TEST_CASE("exit codes") {
  Scratch s;
  const std::string a = s.write("a.poly", "poly v1 mod 97\nterm 1 0\nterm 1 100\n");
  const std::string b = s.write("b.poly", "poly v1 mod 101\nterm 1 0\n");
  const std::string bad = s.write("bad.poly", "poly v1 mod 97\nterm 0 1\n");
  const std::string big = s.write("big.poly", "poly v1 mod 97\ndense 1 1 1 1 1 1 1 1\n");
  CHECK(run({"mul", a, b}).code == kExitModulus);
  CHECK(run({"mul", bad, a}).code == kExitParse);
  CHECK(run({"mul", a, a, "--algo", "bogus"}).code == kExitParse);
  CHECK(run({"mul", a, a, "--model", "quantum"}).code == kExitParse);
  CHECK(run({"mul", big, big, "--algo", "dense", "--cap", "10"}).code == kExitCapacity);
  CHECK(run({"mul", a, s.path("missing.poly")}).code == kExitFailure);
  CHECK(run({"mul", a, a, "--algo", "eqspace"}).code == kExitFailure);
  CHECK(run({}).code == kExitParse);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("bench emits a deterministic table") {
  Scratch s;
  const std::string matrix = s.write("m.txt",
                                     "# trivial and structured cases\n"
                                     "unit algos=dense,sparse,auto a.family=random-sparse a.terms=1 a.degree=0 "
                                     "b.family=random-sparse b.terms=1 b.degree=0\n"
                                     "gappy algos=dense,chunky,auto seed=5 family=chunky chunks=20 chunk_len=5 "
                                     "gap_len=400\n");
  const Run a = run({"bench", matrix, "--model", "schoolbook"});
  const Run b = run({"bench", matrix, "--model", "schoolbook"});
  REQUIRE(a.code == 0);
  std::vector<std::vector<std::string>> rows, again;
  auto table = [](const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      std::vector<std::string> cells;
      std::istringstream cs(line);
      for (std::string c; std::getline(cs, c, '\t');) cells.push_back(c);
      out.push_back(cells);
    }
    return out;
  };
  rows = table(a.out);
  again = table(b.out);
  REQUIRE(rows.size() == 7);
  CHECK(a.out.substr(0, a.out.find('\n')) == kBenchHeader);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 6);
    for (int c = 0; c < 5; ++c) CHECK(rows[i][c] == again[i][c]);
  }
  CHECK(rows[1][0] == "unit");
  CHECK(rows[1][3] == "1");
  CHECK(rows[3][1] == "auto:dense");
  const double dense_muls = std::stod(rows[4][3]), chunky_muls = std::stod(rows[5][3]);
  CHECK(rows[5][1] == "chunky");
  CHECK(chunky_muls <= dense_muls);

  CHECK(run({"bench", s.write("bad.txt", "x algos=warp\n")}).code == kExitParse);
}

TEST_CASE("matrix parsing") {
  const auto cases = parse_bench_matrix("c1 seed=4 a.family=spaced b.family=chunky b.seed=9 mod=97\n");
  REQUIRE(cases.size() == 1);
  CHECK(cases[0].a.family == Family::spaced);
  CHECK(cases[0].a.seed == 4);
  CHECK(cases[0].b.seed == 9);
  CHECK(cases[0].b.modulus == 97);
  CHECK(cases[0].strategies.size() == 6);
  CHECK(parse_bench_matrix("c2 seed=4\n")[0].b.seed == 5);
  CHECK_THROWS_AS(parse_bench_matrix("k=v\n"), ParseError);
}
