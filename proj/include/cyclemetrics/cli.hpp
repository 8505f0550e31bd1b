#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace cyclemetrics {

enum class OutputFormat { csv, json, plain };

struct RunConfig {
  std::string command;
  int precision = 8;
  OutputFormat format = OutputFormat::plain;
  std::uint64_t seed = 1;
  int threads = 1;
  /// Empty for stdout.
  std::string out;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int usage = 2;
inline constexpr int domain = 3;
inline constexpr int quadrature = 4;
}  // namespace exit_code

/// Runs the command line `args` (without the program name), writing results
/// to `out` (or the --out file) and diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Formats v with `precision` decimals, independent of the global locale.
std::string format_fixed(double v, int precision);

}  // namespace cyclemetrics
