#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cojam/outer.hpp"

// Deterministic, seedable sweeps producing the tabular data behind the three
// studies -- the R2(z) curve, the source-SNR sweep, and random-eavesdropper
// trials -- plus a Monte Carlo check that sampled noise reproduces the
// analytic interference powers.  Output is CSV; plotting is out of scope.
namespace cojam {

struct SweepRow {
  double x = 0.0;        // sweep variable: z, gamma0 in dB, or trial index
  double r1_bits = 0.0;
  double r2_bits = 0.0;
  double z_star = 0.0;
  std::size_t evaluations = 0;
};

// R2 along a uniform z grid; r1 is constant across rows and z_star echoes
// the row's own z.  Requires 0 <= z_lo < z_hi <= z_max and n_points >= 2.
std::vector<SweepRow> sweep_z(const SystemInstance& inst, double z_lo,
                              double z_hi, int n_points, int jobs = 1,
                              const OuterOptions& opt = {});

// Full nulling + optimize at each gamma0 on a uniform dB grid, channels and
// relay SNRs held fixed.  Requires db_lo < db_hi and n_points >= 2.
std::vector<SweepRow> sweep_gamma0(const SystemInstance& inst, double db_lo,
                                   double db_hi, int n_points, int jobs = 1,
                                   const OuterOptions& opt = {});

// Redraw every relay's eavesdropper channel i.i.d. CN(0, I) per trial
// (destination channels, source channels, SNRs fixed) and re-optimize.
// Trial t uses a derived seed, so rows are reproducible independently and
// under any job count.
std::vector<SweepRow> random_g_trials(const SystemInstance& inst,
                                      int n_trials, std::uint64_t seed,
                                      int jobs = 1,
                                      const OuterOptions& opt = {});

struct EmpiricalInterference {
  std::size_t n_samples = 0;
  double bob_power = 0.0;  // empirical mean of |sum_i sqrt(gamma_i) h_i^T n_i|^2
  double eve_power = 0.0;  // same across the eavesdropper channels
  double bob_se = 0.0;     // standard errors of the two means
  double eve_se = 0.0;
};

// Draw n_i ~ CN(0, Sigma_i) per sample (covariances factored by the 2x2
// eigendecomposition, negative eigenvalues clipped; gamma applied
// analytically) and accumulate both received powers.  The covariance list
// must match the relay count (SizeError); n_samples >= 1 (DomainError).
EmpiricalInterference empirical_interference(
    const SystemInstance& inst, const std::vector<Herm2>& covariances,
    std::size_t n_samples, std::uint64_t seed);

// CSV emission, one header row, 12 significant digits.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_csv(std::ostream& out, const EmpiricalInterference& e);

}  // namespace cojam
