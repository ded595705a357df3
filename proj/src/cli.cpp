#include "cojam/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "cojam/errors.hpp"
#include "cojam/nulling.hpp"
#include "cojam/validation.hpp"

namespace cojam {

namespace {

std::string fmt10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

SystemInstance resolve_instance(const CliConfig& cfg) {
  if (cfg.instance_path) return load_instance(*cfg.instance_path);
  return example_instance();
}

OuterOptions outer_options(const CliConfig& cfg) {
  OuterOptions opt;
  opt.z_tol = cfg.z_tol;
  opt.eq_tol = cfg.eq_tol;
  opt.gap_tol = cfg.gap_tol;
  return opt;
}

void clamp_rows(std::vector<SweepRow>& rows, bool clamp) {
  if (!clamp) return;
  for (auto& row : rows) {
    row.r1_bits = std::max(0.0, row.r1_bits);
    row.r2_bits = std::max(0.0, row.r2_bits);
  }
}

int run_optimize(const CliConfig& cfg, std::ostream& data, std::ostream& err) {
  const SystemInstance inst = resolve_instance(cfg);
  const NullingSolution nulling = solve_nulling(inst);
  const OuterSolution best = optimize(inst, outer_options(cfg));

  err << "# R1 = " << fmt10(nulling.r1_bits) << " bits (nulling)\n";
  err << "# z* = " << fmt10(best.z_star) << "\n";
  err << "# R2 = " << fmt10(best.r2_bits) << " bits (optimized)\n";
  err << "# z_max = " << fmt10(z_max(inst)) << ", zstar_upper_bound = "
      << fmt10(zstar_upper_bound(inst)) << "\n";
  err << "# inner evaluations = " << best.evaluations << "\n";

  std::vector<SweepRow> rows{{best.z_star, nulling.r1_bits, best.r2_bits,
                              best.z_star, best.evaluations}};
  clamp_rows(rows, cfg.clamp);
  write_csv(data, rows);
  return 0;
}

int run_sweep_z(const CliConfig& cfg, std::ostream& data, std::ostream& err) {
  const SystemInstance inst = resolve_instance(cfg);
  const double z_hi = cfg.z_hi ? *cfg.z_hi : z_max(inst);
  std::vector<SweepRow> rows = sweep_z(inst, cfg.z_lo, z_hi, cfg.points,
                                       cfg.jobs, outer_options(cfg));
  const auto peak = std::max_element(
      rows.begin(), rows.end(),
      [](const SweepRow& a, const SweepRow& b) { return a.r2_bits < b.r2_bits; });
  err << "# " << rows.size() << " points over z in [" << fmt10(cfg.z_lo)
      << ", " << fmt10(z_hi) << "]; peak R2 = " << fmt10(peak->r2_bits)
      << " bits at z = " << fmt10(peak->x) << "\n";
  clamp_rows(rows, cfg.clamp);
  write_csv(data, rows);
  return 0;
}

int run_sweep_snr(const CliConfig& cfg, std::ostream& data,
                  std::ostream& err) {
  const SystemInstance inst = resolve_instance(cfg);
  std::vector<SweepRow> rows = sweep_gamma0(inst, cfg.db_lo, cfg.db_hi,
                                            cfg.points, cfg.jobs,
                                            outer_options(cfg));
  double max_gap = 0.0;
  for (const auto& row : rows) max_gap = std::max(max_gap, row.r2_bits - row.r1_bits);
  err << "# " << rows.size() << " points over gamma0 in [" << fmt10(cfg.db_lo)
      << ", " << fmt10(cfg.db_hi) << "] dB; max R2 - R1 = " << fmt10(max_gap)
      << " bits\n";
  clamp_rows(rows, cfg.clamp);
  write_csv(data, rows);
  return 0;
}

int run_random_trials(const CliConfig& cfg, std::ostream& data,
                      std::ostream& err) {
  const SystemInstance inst = resolve_instance(cfg);
  std::vector<SweepRow> rows = random_g_trials(inst, cfg.trials, cfg.seed,
                                               cfg.jobs, outer_options(cfg));
  double mean_gap = 0.0;
  for (const auto& row : rows) mean_gap += row.r2_bits - row.r1_bits;
  mean_gap /= static_cast<double>(rows.size());
  err << "# " << rows.size() << " eavesdropper-channel redraws (seed "
      << cfg.seed << "); mean R2 - R1 = " << fmt10(mean_gap) << " bits\n";
  clamp_rows(rows, cfg.clamp);
  write_csv(data, rows);
  return 0;
}

int run_validate(const CliConfig& cfg, std::ostream& data, std::ostream& err) {
  const std::vector<SuiteReport> reports =
      run_all_suites(cfg.suite_seeds, cfg.seed);
  data << "suite,passed,metric\n";
  bool all_passed = true;
  for (const auto& rep : reports) {
    err << "# suite " << rep.name << ": " << (rep.passed ? "PASS" : "FAIL")
        << " (" << rep.detail << ")\n";
    data << rep.name << ',' << (rep.passed ? 1 : 0) << ','
         << fmt10(rep.metric) << '\n';
    all_passed = all_passed && rep.passed;
  }
  return all_passed ? 0 : 1;
}

int run_gen_instance(const CliConfig& cfg, std::ostream& data,
                     std::ostream& err) {
  SystemInstance inst = random_instance(cfg.n_relays, cfg.seed, cfg.variance);
  set_gamma0_db(inst, 5.0);
  set_all_relay_gammas_db(inst, 2.0);
  save_instance(inst, data);
  err << "# generated " << cfg.n_relays << "-relay instance (seed "
      << cfg.seed << ", variance " << fmt10(cfg.variance)
      << ", SNRs 5/2 dB)\n";
  return 0;
}

int dispatch(const CliConfig& cfg, std::ostream& data, std::ostream& err) {
  switch (cfg.command) {
    case CliConfig::Command::paper_example:
    case CliConfig::Command::optimize:
      return run_optimize(cfg, data, err);
    case CliConfig::Command::sweep_z:
      return run_sweep_z(cfg, data, err);
    case CliConfig::Command::sweep_snr:
      return run_sweep_snr(cfg, data, err);
    case CliConfig::Command::random_trials:
      return run_random_trials(cfg, data, err);
    case CliConfig::Command::validate:
      return run_validate(cfg, data, err);
    case CliConfig::Command::gen_instance:
      return run_gen_instance(cfg, data, err);
  }
  return 1;
}

}  // namespace

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::ofstream file;
    std::ostream* data = &out;
    if (config.output_path) {
      file.open(*config.output_path);
      if (!file) throw IoError("cannot open output file: " +
                               *config.output_path);
      data = &file;
    }
    const int rc = dispatch(config, *data, err);
    if (config.output_path) {
      file.flush();
      if (!file) throw IoError("write failed: " + *config.output_path);
    }
    return rc;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {  // DomainError, SizeError, ZeroChannel
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cojam
