#pragma once

#include <vector>

#include "cojam/model.hpp"

// Inner subproblem: given a target z for the total jamming power received by
// the destination, choose per-relay noise covariances (PSD, trace <= 1) that
// maximize the total jamming power F(z) received by the eavesdropper subject
// to the destination power hitting z exactly.
//
// The problem is convex and separable across relays except for the single
// scalar equality constraint, so it is solved by Lagrangian dual
// decomposition: dualize the equality with multiplier mu, solve each relay's
// 2x2 subproblem in closed form (top eigenvector of A_i(mu)), and bisect on
// mu using the fact that the achieved z is nonincreasing in mu.  A duality
// gap is returned as an optimality certificate.
namespace cojam {

// Upper end of the feasible z interval: sum_i gamma_i |h_i|^2 (attained by
// aligning every covariance with its destination channel).
double z_max(const SystemInstance& inst);

// How a relay subproblem resolves ties when its top eigenvalue is degenerate
// or crosses zero: pick the optimal covariance with the largest destination
// quadratic form (lower bracket end), the smallest (upper end), or the plain
// eigenvector convention.  Keeps the bisection map monotone through
// breakpoints.
enum class TieBreak { neutral, prefer_destination, prefer_eavesdropper };

struct RelayBest {
  Herm2 sigma{};        // optimal covariance for this relay at this mu
  double value = 0.0;   // its dual objective term, max(0, lambda_hi)
  double lambda_hi = 0.0;  // top eigenvalue of A(mu), sign exposed for
                           // breakpoint detection
};

// Closed-form solution of one relay's dual subproblem
//   maximize Tr(Sigma A)  over Sigma PSD, Tr(Sigma) <= 1,
// where A = gamma (g* g^T - mu h* h^T): the top eigenvector's outer product
// if lambda_max(A) > 0, the zero matrix otherwise.
RelayBest per_relay_best(const RelayLink& relay, double mu,
                         TieBreak tie = TieBreak::neutral);

struct InnerSolution {
  std::vector<Herm2> covariances;
  double f_value = 0.0;     // achieved objective, sum_i gamma_i g^T Sigma g*
  double z_achieved = 0.0;  // sum_i gamma_i h^T Sigma h*
  double mu = 0.0;          // dual multiplier of the equality constraint
  double dual_value = 0.0;  // sum_i max(0, lambda_max(A_i(mu))) + mu z
  double gap = 0.0;         // dual_value - f_value, optimality certificate
};

// Solve F(z).  Tolerances are relative bases: the equality constraint is met
// within eq_tol*(1+z) and the certificate must satisfy
// gap <= gap_tol*(1+|f_value|).  Throws DomainError for z outside
// [0, z_max], ConvergenceError if bracketing or bisection fails to certify
// within the iteration caps (200 doublings / 200 bisections).
//
// Endpoints are closed-form: z = 0 returns the null-direction covariances
// (support forced off h), z = z_max the h-aligned ones (constraint pinned).
// At those two points the dual optimum is only approached as mu -> +/-inf,
// so mu is reported as the signed infinity and dual_value = f_value with
// zero gap (the closed forms are exactly optimal).
InnerSolution solve_inner(const SystemInstance& inst, double z,
                          double eq_tol = 1e-8, double gap_tol = 1e-6);

// Test oracle: brute-force grid enumeration of feasible covariances,
// restricted to at most two relays (SizeError beyond).  Each relay's grid
// takes a, d in {0, step, ..., 1} and Re b, Im b in {-1, ..., 1}, keeping
// PSD points with trace <= 1; joint assignments whose destination power lies
// within +/- slack of z compete on the objective.  Returns the best
// objective found, or -infinity if no grid point lands in the window.
// Requires step in (0, 0.1].
double oracle_inner_grid(const SystemInstance& inst, double z, double step,
                         double slack);

}  // namespace cojam
