#include "cojam/outer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "cojam/errors.hpp"
#include "cojam/nulling.hpp"

namespace cojam {

namespace {

double r2_from_inner(const SystemInstance& inst, double z, double f) {
  return std::log2(1.0 + inst.gamma0 * std::norm(inst.h0) / (z + 1.0)) -
         std::log2(1.0 + inst.gamma0 * std::norm(inst.g0) / (f + 1.0));
}

}  // namespace

double r2_of_z(const SystemInstance& inst, double z, double eq_tol,
               double gap_tol) {
  return r2_from_inner(inst, z,
                       solve_inner(inst, z, eq_tol, gap_tol).f_value);
}

double g_of_z(const SystemInstance& inst, double z, double eq_tol,
              double gap_tol) {
  const double f = solve_inner(inst, z, eq_tol, gap_tol).f_value;
  return (1.0 + inst.gamma0 * std::norm(inst.h0) / (z + 1.0)) /
         (1.0 + inst.gamma0 * std::norm(inst.g0) / (f + 1.0));
}

double zstar_upper_bound(const SystemInstance& inst) {
  const double x = inst.gamma0 * std::norm(inst.h0);
  const double bob = std::log2(1.0 + x);
  const double r1 = solve_nulling(inst).r1_bits;
  if (!(bob > 0.0) || !(r1 > 0.0)) {
    // Nonpositive nulling rate: the "first term stays above the nulling
    // rate" argument gives no constraint, so only the domain endpoint is a
    // proven bound.
    return z_max(inst);
  }
  const double beta = r1 / bob;  // in (0, 1]
  const double denom = std::pow(1.0 + x, beta) - 1.0;
  if (!(denom > 0.0)) return z_max(inst);
  return std::max(0.0, x / denom - 1.0);
}

OuterSolution optimize(const SystemInstance& inst, const OuterOptions& opt) {
  if (opt.coarse_points < 8) {
    throw DomainError("optimize: coarse_points must be >= 8, got " +
                      std::to_string(opt.coarse_points));
  }
  const double zm = z_max(inst);

  OuterSolution sol;
  sol.r1_bits = solve_nulling(inst).r1_bits;

  std::map<double, InnerSolution> memo;
  const auto r2_at = [&](double zq) {
    zq = std::clamp(zq, 0.0, zm);
    auto it = memo.find(zq);
    if (it == memo.end()) {
      it = memo.emplace(zq, solve_inner(inst, zq, opt.eq_tol, opt.gap_tol))
               .first;
      sol.search_trace.emplace_back(
          zq, r2_from_inner(inst, zq, it->second.f_value));
      ++sol.evaluations;
    }
    return r2_from_inner(inst, zq, it->second.f_value);
  };

  const double bound = zstar_upper_bound(inst);
  const double hi = std::min(zm, 1.1 * bound);

  if (hi > 0.0) {
    // Coarse grid over the (possibly shrunken) interval, then golden-section
    // refinement around the best grid cell.
    const int n = opt.coarse_points;
    int best_k = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      const double v = r2_at(hi * k / (n - 1));
      if (v > best_v) {
        best_v = v;
        best_k = k;
      }
    }
    double a = hi * std::max(0, best_k - 1) / (n - 1);
    double b = hi * std::min(n - 1, best_k + 1) / (n - 1);
    constexpr double invphi = 0.61803398874989485;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = r2_at(x1);
    double f2 = r2_at(x2);
    int iters = 0;
    while (b - a > opt.z_tol * (1.0 + zm)) {
      if (++iters > opt.max_iters) {
        throw ConvergenceError(
            "optimize: golden-section exceeded " +
            std::to_string(opt.max_iters) + " iterations on [" +
            std::to_string(a) + ", " + std::to_string(b) + "]");
      }
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = r2_at(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = r2_at(x2);
      }
    }
  } else {
    // The analytic bound pins the maximizer at the left endpoint.
    r2_at(0.0);
  }

  // The answer dominates everything in its own trace by construction.
  sol.z_star = sol.search_trace.front().first;
  sol.r2_bits = sol.search_trace.front().second;
  for (const auto& [zq, r2] : sol.search_trace) {
    if (r2 > sol.r2_bits) {
      sol.r2_bits = r2;
      sol.z_star = zq;
    }
  }
  sol.covariances = memo.at(sol.z_star).covariances;
  return sol;
}

}  // namespace cojam
