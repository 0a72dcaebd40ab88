#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "adaptmul/adaptive.hpp"
#include "adaptmul/instance.hpp"

namespace adaptmul {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitModulus = 3,
  kExitCapacity = 4,
};

/// One line of a benchmark matrix.
struct BenchCase {
  std::string name;
  InstanceSpec a, b;
  std::vector<Strategy> strategies;
};

/// Matrix lines look like
///   name algos=dense,chunky,auto mod=9973 seed=3 a.family=chunky a.chunks=10 b.family=random-dense
/// Unprefixed parameters apply to both operands, a./b. ones to one of them.
/// b's seed is a's plus one unless set explicitly. Blank lines and '#'
/// comments are skipped. Throws ParseError.
std::vector<BenchCase> parse_bench_matrix(std::string_view text);

/// Tab-separated table header written by `bench`.
inline constexpr std::string_view kBenchHeader =
    "instance\tstrategy\tmodel_cost\tmul_count\tadd_count\twall_ms";

/// Entry point of the `adaptmul` tool: subcommands gen, mul and bench.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adaptmul
