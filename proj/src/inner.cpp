#include "cojam/inner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "cojam/errors.hpp"

namespace cojam {

double z_max(const SystemInstance& inst) {
  double total = 0.0;
  for (const auto& r : inst.relays) total += r.gamma * r.h.norm2();
  return total;
}

namespace {

// A(mu) = gamma (g* g^T - mu h* h^T); outer_self(conj(v)) builds v* v^T.
Herm2 dual_matrix(const RelayLink& relay, double mu) {
  return relay.gamma *
         (outer_self(conj(relay.g)) + (-mu) * outer_self(conj(relay.h)));
}

CVec2 unit_along_conj(const CVec2& v, double n) {
  return {std::conj(v.c1) / n, std::conj(v.c2) / n};
}

}  // namespace

RelayBest per_relay_best(const RelayLink& relay, double mu, TieBreak tie) {
  const Eig2 eig = herm_eig2(dual_matrix(relay, mu));
  const double tol = 1e-12 * (1.0 + std::abs(eig.lam_hi) + std::abs(eig.lam_lo));
  const bool near_zero = std::abs(eig.lam_hi) <= tol;
  const bool degenerate = (eig.lam_hi - eig.lam_lo) <= tol;

  RelayBest best;
  best.lambda_hi = eig.lam_hi;

  switch (tie) {
    case TieBreak::neutral:
      if (eig.lam_hi > 0.0) {
        best.sigma = outer_self(eig.v_hi);
        best.value = eig.lam_hi;
      }
      return best;

    case TieBreak::prefer_destination:
      // Among dual-optimal covariances, take the one whose destination
      // quadratic form is largest: the h-aligned direction when the whole
      // eigenspace ties, the top eigenvector when only zero ties.
      if (degenerate && eig.lam_hi >= -tol) {
        const double hn = relay.h.norm();
        const CVec2 v = hn > 0.0 ? unit_along_conj(relay.h, hn) : eig.v_hi;
        best.sigma = outer_self(v);
        best.value = std::max(eig.lam_hi, 0.0);
      } else if (near_zero || eig.lam_hi > 0.0) {
        best.sigma = outer_self(eig.v_hi);
        best.value = std::max(eig.lam_hi, 0.0);
      }
      return best;

    case TieBreak::prefer_eavesdropper:
      // Mirror image: smallest destination form among optima -- the zero
      // matrix when shutting off is optimal, the null direction of h when
      // the eigenspace ties.
      if (near_zero) return best;
      if (eig.lam_hi > 0.0) {
        const CVec2 v = (degenerate && relay.h.norm2() > 0.0)
                            ? null_direction(relay.h)
                            : eig.v_hi;
        best.sigma = outer_self(v);
        best.value = eig.lam_hi;
      }
      return best;
  }
  return best;
}

namespace {

struct MuEval {
  std::vector<Herm2> sigmas;
  double z = 0.0;
  double f = 0.0;
  double dual_sum = 0.0;  // sum of max(0, lambda_max(A_i(mu)))
};

MuEval eval_mu(const SystemInstance& inst, double mu, TieBreak tie) {
  MuEval ev;
  ev.sigmas.reserve(inst.relays.size());
  for (const auto& relay : inst.relays) {
    const RelayBest rb = per_relay_best(relay, mu, tie);
    ev.z += relay.gamma * quad_form(rb.sigma, relay.h);
    ev.f += relay.gamma * quad_form(rb.sigma, relay.g);
    ev.dual_sum += rb.value;
    ev.sigmas.push_back(rb.sigma);
  }
  return ev;
}

ConvergenceError solver_stuck(const char* what, double z, double mu_lo,
                              double mu_hi) {
  std::ostringstream msg;
  msg << "solve_inner: " << what << " at z=" << z << ", mu bracket ["
      << mu_lo << ", " << mu_hi << "]";
  return ConvergenceError(msg.str());
}

void finalize_from_covariances(const SystemInstance& inst,
                               InnerSolution& sol) {
  sol.z_achieved = 0.0;
  sol.f_value = 0.0;
  for (std::size_t i = 0; i < inst.relays.size(); ++i) {
    sol.z_achieved +=
        inst.relays[i].gamma * quad_form(sol.covariances[i], inst.relays[i].h);
    sol.f_value +=
        inst.relays[i].gamma * quad_form(sol.covariances[i], inst.relays[i].g);
  }
}

// Covariance set for the z = 0 endpoint: support forced off every h (the
// null direction), which leaves relays with h = 0 free to aim at g.
std::vector<Herm2> endpoint_covariances(const SystemInstance& inst,
                                        bool align_with_h) {
  std::vector<Herm2> covs;
  covs.reserve(inst.relays.size());
  for (const auto& relay : inst.relays) {
    Herm2 cov{};
    const double hn = relay.h.norm();
    if (hn > 0.0) {
      cov = align_with_h ? outer_self(unit_along_conj(relay.h, hn))
                         : outer_self(null_direction(relay.h));
    } else if (relay.g.norm2() > 0.0) {
      cov = outer_self(unit_along_conj(relay.g, relay.g.norm()));
    }
    covs.push_back(cov);
  }
  return covs;
}

}  // namespace

InnerSolution solve_inner(const SystemInstance& inst, double z, double eq_tol,
                          double gap_tol) {
  const double zm = z_max(inst);
  const double dom_tol = 1e-9 * (1.0 + zm);
  if (!(z >= -dom_tol && z <= zm + dom_tol)) {
    throw DomainError("solve_inner: z=" + std::to_string(z) +
                      " outside [0, " + std::to_string(zm) + "]");
  }
  z = std::clamp(z, 0.0, zm);

  const double eq_tol_abs = eq_tol * (1.0 + z);
  const double eps = std::numeric_limits<double>::epsilon();
  const double inf = std::numeric_limits<double>::infinity();

  InnerSolution sol;

  // Endpoint closed forms; the dual optimum is not attained at finite mu
  // there (the bisection would chase mu to +/-inf), but the primal optimum
  // is known exactly, so report the limiting multiplier and a zero gap.
  if (zm == 0.0 || z <= 4.0 * eps * zm) {
    sol.covariances = endpoint_covariances(inst, /*align_with_h=*/false);
    finalize_from_covariances(inst, sol);
    sol.mu = inf;
    sol.dual_value = sol.f_value;
    sol.gap = 0.0;
    return sol;
  }
  if (z >= zm * (1.0 - 4.0 * eps)) {
    sol.covariances = endpoint_covariances(inst, /*align_with_h=*/true);
    finalize_from_covariances(inst, sol);
    sol.mu = -inf;
    sol.dual_value = sol.f_value;
    sol.gap = 0.0;
    return sol;
  }

  // Bracket the dual root: z(mu) is nonincreasing, z(-inf) = z_max,
  // z(+inf) = 0.  The lower end is evaluated with the destination-preferring
  // tie break and the upper end with the eavesdropper-preferring one, so the
  // one-sided values genuinely straddle the target even at breakpoints.
  double mu_lo = -1.0;
  double mu_hi = 1.0;
  MuEval lo = eval_mu(inst, mu_lo, TieBreak::prefer_destination);
  MuEval hi = eval_mu(inst, mu_hi, TieBreak::prefer_eavesdropper);
  int doublings = 0;
  while (lo.z < z) {
    mu_lo *= 2.0;
    lo = eval_mu(inst, mu_lo, TieBreak::prefer_destination);
    if (++doublings > 200) {
      throw solver_stuck("bracket expansion exceeded 200 doublings", z, mu_lo,
                         mu_hi);
    }
  }
  while (hi.z > z) {
    mu_hi *= 2.0;
    hi = eval_mu(inst, mu_hi, TieBreak::prefer_eavesdropper);
    if (++doublings > 200) {
      throw solver_stuck("bracket expansion exceeded 200 doublings", z, mu_lo,
                         mu_hi);
    }
  }

  // Every mu yields the dual bound g(mu) = sum lambda^+ + mu z', valid for
  // the problem whose constraint level is z'.  The certificate is evaluated
  // at the level the returned covariances actually achieve (within eq_tol of
  // the request): against that level the bound at the final mu matches the
  // primal to rounding, whereas against the requested z it would be off by
  // |mu| * eq_tol and could even dip below the primal.
  int iters = 0;
  while (mu_hi - mu_lo >
         1e-13 * (1.0 + std::abs(mu_lo) + std::abs(mu_hi))) {
    if (++iters > 200) {
      throw solver_stuck("bisection exceeded 200 iterations", z, mu_lo, mu_hi);
    }
    const double mid = 0.5 * (mu_lo + mu_hi);
    MuEval ev = eval_mu(inst, mid, TieBreak::neutral);
    if (std::abs(ev.z - z) <= eq_tol_abs) {
      sol.covariances = std::move(ev.sigmas);
      finalize_from_covariances(inst, sol);
      sol.mu = mid;
      sol.dual_value = ev.dual_sum + mid * sol.z_achieved;
      sol.gap = sol.dual_value - sol.f_value;
      return sol;
    }
    if (ev.z >= z) {
      mu_lo = mid;
    } else {
      mu_hi = mid;
    }
  }

  // The bracket collapsed onto a breakpoint of z(mu): the target sits in the
  // jump between the two one-sided solutions.  Strong duality says an
  // optimum mixes at most one relay between its one-sided maximizers; blend
  // greedily in relay-index order from the low side until z is met.
  lo = eval_mu(inst, mu_lo, TieBreak::prefer_destination);
  hi = eval_mu(inst, mu_hi, TieBreak::prefer_eavesdropper);

  sol.covariances = hi.sigmas;
  double z_cur = hi.z;
  for (std::size_t i = 0; i < inst.relays.size(); ++i) {
    const double need = z - z_cur;
    if (need <= 0.0) break;
    const auto& relay = inst.relays[i];
    const double z_hi_i = relay.gamma * quad_form(hi.sigmas[i], relay.h);
    const double z_lo_i = relay.gamma * quad_form(lo.sigmas[i], relay.h);
    const double delta = z_lo_i - z_hi_i;
    if (delta <= 0.0) continue;
    if (delta <= need) {
      sol.covariances[i] = lo.sigmas[i];
      z_cur += delta;
    } else {
      const double t = need / delta;
      sol.covariances[i] =
          t * lo.sigmas[i] + (1.0 - t) * hi.sigmas[i];
      z_cur += need;
    }
  }

  finalize_from_covariances(inst, sol);
  if (std::abs(sol.z_achieved - z) > eq_tol_abs) {
    throw solver_stuck("equality constraint unmet after breakpoint blending",
                       z, mu_lo, mu_hi);
  }
  const double dual_lo = lo.dual_sum + mu_lo * sol.z_achieved;
  const double dual_hi = hi.dual_sum + mu_hi * sol.z_achieved;
  sol.mu = dual_lo <= dual_hi ? mu_lo : mu_hi;
  sol.dual_value = std::min(dual_lo, dual_hi);
  sol.gap = sol.dual_value - sol.f_value;
  if (sol.gap > gap_tol * (1.0 + std::abs(sol.f_value))) {
    throw solver_stuck("duality gap exceeds tolerance", z, mu_lo, mu_hi);
  }
  return sol;
}

namespace {

struct GridPoint {
  Herm2 cov{};
  double zc = 0.0;  // gamma-weighted destination form of this covariance
  double fc = 0.0;  // gamma-weighted eavesdropper form
};

// All grid covariances for one relay: a, d in {0, step, ..., 1} and
// Re b, Im b in {-1, ..., 1}, filtered to PSD with trace <= 1.
std::vector<GridPoint> relay_grid(const RelayLink& relay, double step) {
  const int k_diag = static_cast<int>(std::floor(1.0 / step + 1e-9));
  const int k_off = static_cast<int>(std::floor(2.0 / step + 1e-9));
  std::vector<GridPoint> pts;
  for (int ia = 0; ia <= k_diag; ++ia) {
    const double a = ia * step;
    for (int id = 0; id <= k_diag; ++id) {
      const double d = id * step;
      if (a + d > 1.0 + 1e-12) continue;
      const double bound = a * d;
      for (int ir = 0; ir <= k_off; ++ir) {
        const double br = -1.0 + ir * step;
        if (br * br > bound + 1e-12) continue;
        for (int ii = 0; ii <= k_off; ++ii) {
          const double bi = -1.0 + ii * step;
          if (br * br + bi * bi > bound + 1e-12) continue;
          GridPoint p;
          p.cov = Herm2{a, d, cx{br, bi}};
          p.zc = relay.gamma * quad_form(p.cov, relay.h);
          p.fc = relay.gamma * quad_form(p.cov, relay.g);
          pts.push_back(p);
        }
      }
    }
  }
  return pts;
}

// Static range-max (sparse table) over the second relay's objective values,
// so each window query in the sorted-z join is O(1).
struct RangeMax {
  std::vector<std::vector<double>> tab;

  explicit RangeMax(std::vector<double> values) {
    tab.push_back(std::move(values));
    const std::size_t n = tab[0].size();
    for (std::size_t len = 2; len <= n; len *= 2) {
      const auto& prev = tab.back();
      std::vector<double> row(n - len + 1);
      for (std::size_t i = 0; i + len <= n; ++i) {
        row[i] = std::max(prev[i], prev[i + len / 2]);
      }
      tab.push_back(std::move(row));
    }
  }

  // Max over [lo, hi); requires lo < hi.
  double query(std::size_t lo, std::size_t hi) const {
    const std::size_t k = std::bit_width(hi - lo) - 1;
    return std::max(tab[k][lo], tab[k][hi - (std::size_t{1} << k)]);
  }
};

}  // namespace

double oracle_inner_grid(const SystemInstance& inst, double z, double step,
                         double slack) {
  if (inst.relays.size() > 2) {
    throw SizeError("oracle_inner_grid: supports at most 2 relays, got " +
                    std::to_string(inst.relays.size()));
  }
  if (!(step > 0.0 && step <= 0.1)) {
    throw DomainError("oracle_inner_grid: step must lie in (0, 0.1], got " +
                      std::to_string(step));
  }
  if (!(slack >= 0.0)) {
    throw DomainError("oracle_inner_grid: slack must be nonnegative");
  }

  double best = -std::numeric_limits<double>::infinity();
  if (inst.relays.size() == 1) {
    for (const auto& p : relay_grid(inst.relays[0], step)) {
      if (std::abs(p.zc - z) <= slack && p.fc > best) best = p.fc;
    }
    return best;
  }

  const std::vector<GridPoint> grid1 = relay_grid(inst.relays[0], step);
  std::vector<GridPoint> grid2 = relay_grid(inst.relays[1], step);
  std::sort(grid2.begin(), grid2.end(),
            [](const GridPoint& x, const GridPoint& y) { return x.zc < y.zc; });
  std::vector<double> z2(grid2.size());
  std::vector<double> f2(grid2.size());
  for (std::size_t i = 0; i < grid2.size(); ++i) {
    z2[i] = grid2[i].zc;
    f2[i] = grid2[i].fc;
  }
  const RangeMax range_max(std::move(f2));

  // Joint feasibility |zc1 + zc2 - z| <= slack is a contiguous zc2 window
  // once grid2 is sorted; equivalent to the full pairwise enumeration.
  for (const auto& p1 : grid1) {
    const auto lo = std::lower_bound(z2.begin(), z2.end(), z - slack - p1.zc);
    const auto hi = std::upper_bound(z2.begin(), z2.end(), z + slack - p1.zc);
    if (lo >= hi) continue;
    const double combined =
        p1.fc + range_max.query(static_cast<std::size_t>(lo - z2.begin()),
                                static_cast<std::size_t>(hi - z2.begin()));
    if (combined > best) best = combined;
  }
  return best;
}

}  // namespace cojam
