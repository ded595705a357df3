#pragma once

#include <cstddef>
#include <vector>

#include "cojam/inner.hpp"

// Outer problem: maximize the structured-noise secrecy rate
//   R2(z) = log2(1 + gamma0 |h0|^2 / (z+1)) - log2(1 + gamma0 |g0|^2 / (F(z)+1))
// over z in [0, z_max].  R2 is quasi-concave in z, so a coarse grid followed
// by golden-section refinement finds the global maximum up to plateaus.
namespace cojam {

struct OuterSolution {
  double z_star = 0.0;
  double r2_bits = 0.0;
  double r1_bits = 0.0;  // nulling rate, for comparison; equals R2(0)
  std::vector<Herm2> covariances;  // inner solution at z_star
  std::vector<std::pair<double, double>> search_trace;  // (z, R2(z)) evaluated
  std::size_t evaluations = 0;  // distinct inner solves performed
};

struct OuterOptions {
  double z_tol = 1e-6;       // golden-section stops at width z_tol*(1+z_max)
  int coarse_points = 64;    // pre-grid size (>= 8)
  double eq_tol = 1e-8;      // forwarded to solve_inner
  double gap_tol = 1e-6;     // forwarded to solve_inner
  int max_iters = 300;       // golden-section iteration cap
};

// R2 at one z (solves the inner problem).  Propagates solve_inner errors.
double r2_of_z(const SystemInstance& inst, double z, double eq_tol = 1e-8,
               double gap_tol = 1e-6);

// The positive ratio whose base-2 logarithm is R2; same domain and errors.
double g_of_z(const SystemInstance& inst, double z, double eq_tol = 1e-8,
              double gap_tol = 1e-6);

// Analytic upper bound on the maximizer z*: with beta the ratio of the
// nulling rate to the destination rate log2(1 + gamma0 |h0|^2), any z* must
// keep the first rate term at least at the nulling rate, which bounds it by
//   gamma0 |h0|^2 / ((1 + gamma0 |h0|^2)^beta - 1) - 1.
// The derivation needs beta in (0, 1); when the nulling rate is <= 0 the
// inequality is vacuous, so the bound falls back to the domain endpoint
// z_max.  Tiny negative values from beta ~ 1 round-off clamp to 0.
double zstar_upper_bound(const SystemInstance& inst);

// Full outer search.  The interval is [0, min(z_max, 1.1 * bound)] (10%
// margin over the analytic bound, full domain when the bound is vacuous),
// scanned with a coarse grid and refined by golden section.  Inner solves
// are memoized per call, so repeated z values cost one solve.
OuterSolution optimize(const SystemInstance& inst,
                       const OuterOptions& opt = {});

}  // namespace cojam
