#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "argl/distribution.hpp"

namespace argl {

enum class Command { constants, sweep, psi, moments, model, predict, compare };
enum class OutputFormat { csv, json };
enum class MomentKind { main_term, imaginary, empirical };

struct RunConfig {
  Command command = Command::constants;
  std::optional<std::uint64_t> q;
  std::vector<double> tau_grid;
  std::vector<double> s_grid;
  double tol = 1e-10;
  MomentKind moment_kind = MomentKind::main_term;
  std::complex<double> z1{0.0, 0.0};
  std::complex<double> z2{0.0, 0.0};
  double sigma = 1.0;
  std::uint64_t primes = 100'000;
  std::uint64_t exact_primes = 1'000;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0x5eed;
  TailMode tail_mode = TailMode::gaussian_tail;
  unsigned threads = 1;
  bool use_fft = false;
  std::string input_path;   // psi: read a sweep CSV instead of computing
  std::string output_path;  // empty: standard output
  std::string cache_dir;    // empty: ARGL_CACHE_DIR, or no caching
  OutputFormat format = OutputFormat::csv;
};

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitUsage = 2, kExitAccuracy = 3, kExitResource = 4 };

/// Parses a command line into a RunConfig. Throws DomainError on bad input;
/// returns nullopt after printing help.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

/// Checks the per-command requirements (prime q, non-empty grids, ...).
void validate(const RunConfig& config);

/// Runs one command. Output goes to config.output_path or `out`; failures
/// are reported as a JSON object on `err` and mapped to an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parse and run; the body of main().
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string config_json(const RunConfig& config);

}  // namespace argl
