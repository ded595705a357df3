#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "cojam/model.hpp"

// Command dispatch behind the command-line binary.  Parsing lives in the
// binary's main(); everything testable is here.  Data (CSV) goes to the
// output path or stdout; human-readable summary lines, prefixed "# ", go to
// stderr so piped CSV stays machine-parseable.
namespace cojam {

struct CliConfig {
  enum class Command {
    paper_example,   // built-in worked example: nulling + full optimization
    optimize,        // same pipeline on a loaded (or built-in) instance
    sweep_z,         // R2 along a z grid
    sweep_snr,       // nulling + optimization along a source-SNR (dB) grid
    random_trials,   // redraw eavesdropper channels per trial and optimize
    validate,        // run the invariant suites
    gen_instance,    // draw a random instance and write it out
  };

  Command command = Command::paper_example;
  std::optional<std::string> instance_path;  // default: built-in example
  std::optional<std::string> output_path;    // default: stdout
  std::uint64_t seed = 42;

  int points = 51;                // grid sizes for sweeps
  double z_lo = 0.0;
  std::optional<double> z_hi;     // default: z_max of the instance
  double db_lo = 5.0;
  double db_hi = 10.0;
  int trials = 30;
  int suite_seeds = 20;           // validate: instance count scale
  int n_relays = 5;               // gen-instance
  double variance = 1.0;          // gen-instance channel variance
  bool clamp = false;             // report max(0, rate) instead of raw rates
  int jobs = 1;

  double z_tol = 1e-6;
  double eq_tol = 1e-8;
  double gap_tol = 1e-6;
};

// Exit codes: 0 success, 1 invalid arguments/domain, 2 instance I/O or parse
// failure, 3 solver convergence failure.  `validate` returns 1 if any suite
// fails.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cojam
