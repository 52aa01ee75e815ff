#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace morpho::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIoError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line. `args[0]` is the program name. Results that the
/// commands print (JSON, DOT) go to `out`, diagnostics to `err`.
///
///   filter     <in> -o <out> --kind usaif|lsaif [--tau N] [--transform T] [--conn C]
///   pair       <in> [--out-dir D] [--seed S] [--assign random|fixed]
///              [--transform-a T] [--transform-b T] [--gamma-range|--bezier-set]
///   tree       <in> [--kind max|min] (--dot|--stats) [-o file]
///   metrics-de --pred1 P --pred2 P --gt P
///   batch      --input-dir D --output-dir D [pair flags] [--threads N]
///
/// Exit codes: 0 success, 1 I/O or parse failure, 2 bad arguments.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace morpho::cli
