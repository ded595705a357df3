#include <iostream>

#include <CLI11.hpp>

#include "cojam/cli.hpp"

// Thin argument-parsing shell around cojam::run; every behavior lives in the
// library so it stays testable without spawning processes.
int main(int argc, char** argv) {
  using Command = cojam::CliConfig::Command;
  cojam::CliConfig cfg;

  CLI::App app{
      "Secrecy-rate toolkit for a cooperative-jamming helper network:\n"
      "computes the local nulling rate and the globally optimized\n"
      "structured-noise rate, runs sweeps, and validates solver invariants."};
  app.require_subcommand(1);

  const auto add_io = [&](CLI::App* cmd, bool with_instance = true) {
    if (with_instance) {
      cmd->add_option("--instance", cfg.instance_path,
                      "Instance JSON file (default: built-in example)");
    }
    cmd->add_option("--out", cfg.output_path,
                    "Write data output here instead of stdout");
  };
  const auto add_tols = [&](CLI::App* cmd) {
    cmd->add_option("--z-tol", cfg.z_tol,
                    "Outer search interval tolerance (relative)");
    cmd->add_option("--eq-tol", cfg.eq_tol,
                    "Inner equality-constraint tolerance (relative)");
    cmd->add_option("--gap-tol", cfg.gap_tol,
                    "Inner duality-gap tolerance (relative)");
  };
  const auto add_clamp = [&](CLI::App* cmd) {
    cmd->add_flag("--clamp", cfg.clamp,
                  "Report max(0, rate) instead of raw rate differences");
  };
  const auto add_jobs = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", cfg.jobs,
                    "Parallel workers (results identical for any value)")
        ->check(CLI::PositiveNumber);
  };
  const auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", cfg.seed, "Master RNG seed");
  };

  auto* paper = app.add_subcommand(
      "paper-example",
      "Run the built-in worked example: nulling rate and optimized rate");
  add_io(paper, /*with_instance=*/false);
  add_tols(paper);
  add_clamp(paper);
  paper->callback([&] { cfg.command = Command::paper_example; });

  auto* opt = app.add_subcommand(
      "optimize", "Nulling rate plus full outer/inner optimization");
  add_io(opt);
  add_tols(opt);
  add_clamp(opt);
  opt->callback([&] { cfg.command = Command::optimize; });

  auto* sz = app.add_subcommand("sweep-z", "Evaluate R2 along a z grid");
  add_io(sz);
  add_tols(sz);
  add_clamp(sz);
  add_jobs(sz);
  sz->add_option("--points", cfg.points, "Grid size")->check(CLI::Range(2, 1000000));
  sz->add_option("--z-lo", cfg.z_lo, "Lower end of the z grid");
  sz->add_option("--z-hi", cfg.z_hi, "Upper end of the z grid (default: z_max)");
  sz->callback([&] { cfg.command = Command::sweep_z; });

  auto* ss = app.add_subcommand(
      "sweep-snr", "Re-optimize along a source-SNR (dB) grid");
  add_io(ss);
  add_tols(ss);
  add_clamp(ss);
  add_jobs(ss);
  ss->add_option("--points", cfg.points, "Grid size")->check(CLI::Range(2, 1000000));
  ss->add_option("--db-lo", cfg.db_lo, "Lower end of the gamma0 grid in dB");
  ss->add_option("--db-hi", cfg.db_hi, "Upper end of the gamma0 grid in dB");
  ss->callback([&] { cfg.command = Command::sweep_snr; });

  auto* rt = app.add_subcommand(
      "random-trials",
      "Redraw eavesdropper channels per trial and re-optimize");
  add_io(rt);
  add_tols(rt);
  add_clamp(rt);
  add_jobs(rt);
  add_seed(rt);
  rt->add_option("--trials", cfg.trials, "Number of redraws")
      ->check(CLI::PositiveNumber);
  rt->callback([&] { cfg.command = Command::random_trials; });

  auto* val = app.add_subcommand(
      "validate",
      "Run the duality-gap, concavity, quasi-concavity, and oracle suites");
  add_io(val, /*with_instance=*/false);
  add_seed(val);
  val->add_option("--seeds", cfg.suite_seeds,
                  "Instance count scale for the suites")
      ->check(CLI::PositiveNumber);
  val->callback([&] { cfg.command = Command::validate; });

  auto* gen = app.add_subcommand(
      "gen-instance", "Draw a random instance and write it as JSON");
  add_io(gen, /*with_instance=*/false);
  add_seed(gen);
  gen->add_option("--n", cfg.n_relays, "Relay count")
      ->check(CLI::PositiveNumber);
  gen->add_option("--variance", cfg.variance,
                  "Per-coefficient channel variance")
      ->check(CLI::PositiveNumber);
  gen->callback([&] { cfg.command = Command::gen_instance; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // --help exits 0; bad arguments exit 1
  }

  return cojam::run(cfg, std::cout, std::cerr);
}
