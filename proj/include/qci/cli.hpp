#pragma once

#include "qci/linalg.hpp"
#include "qci/serialize.hpp"

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qci::cli {

/// Configuration problems exit with status 2; numeric failures with 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<std::string> out;
  std::optional<int> threads;
};

/// Dispatch a parsed run configuration. Outputs are written atomically
/// (temp file + rename) under the output directory. Returns the process
/// exit status: 0 success, 2 malformed configuration, 3 numeric failure.
int run_json(const serialize::json& config, const Overrides& overrides);

/// Full argv entry point: subcommands eval/search/sweep/ame/analytic with
/// flags --config, --seed, --restarts, --out, --threads (QCI_THREADS is the
/// fallback for --threads).
int run_cli(int argc, const char* const* argv);

/// Render the nonzero amplitudes of a code state as a text table in A^k|R
/// display order, filtering |amplitude| > threshold.
void emit_table(std::ostream& os, const linalg::StateVector& code, int k, int dim_a,
                double ci_per_use, double threshold = 1e-4);

}  // namespace qci::cli
