#include "cojam/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "cojam/errors.hpp"
#include "cojam/nulling.hpp"
#include "cojam/rng.hpp"

namespace cojam {

namespace {

// Index-deterministic parallel loop: results are written by index, so any
// job count produces identical output.  The first worker exception is
// rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, const Fn& fn) {
  const int workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto worker = [&] {
    try {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        fn(i);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<SweepRow> sweep_z(const SystemInstance& inst, double z_lo,
                              double z_hi, int n_points, int jobs,
                              const OuterOptions& opt) {
  const double zm = z_max(inst);
  if (!(z_lo >= 0.0 && z_lo < z_hi && z_hi <= zm * (1.0 + 1e-12))) {
    throw DomainError("sweep_z: need 0 <= z_lo < z_hi <= z_max, got [" +
                      std::to_string(z_lo) + ", " + std::to_string(z_hi) +
                      "] with z_max " + std::to_string(zm));
  }
  if (n_points < 2) throw DomainError("sweep_z: need at least 2 points");

  const double r1 = solve_nulling(inst).r1_bits;
  std::vector<SweepRow> rows(n_points);
  parallel_for(rows.size(), jobs, [&](std::size_t k) {
    const double z = z_lo + (z_hi - z_lo) * static_cast<double>(k) /
                                (n_points - 1);
    rows[k] = {z, r1, r2_of_z(inst, z, opt.eq_tol, opt.gap_tol), z, 1};
  });
  return rows;
}

std::vector<SweepRow> sweep_gamma0(const SystemInstance& inst, double db_lo,
                                   double db_hi, int n_points, int jobs,
                                   const OuterOptions& opt) {
  if (!(db_lo < db_hi)) {
    throw DomainError("sweep_gamma0: need db_lo < db_hi");
  }
  if (n_points < 2) throw DomainError("sweep_gamma0: need at least 2 points");

  std::vector<SweepRow> rows(n_points);
  parallel_for(rows.size(), jobs, [&](std::size_t k) {
    SystemInstance point = inst;
    const double db = db_lo + (db_hi - db_lo) * static_cast<double>(k) /
                                  (n_points - 1);
    set_gamma0_db(point, db);
    const OuterSolution out = optimize(point, opt);
    rows[k] = {db, out.r1_bits, out.r2_bits, out.z_star, out.evaluations};
  });
  return rows;
}

std::vector<SweepRow> random_g_trials(const SystemInstance& inst,
                                      int n_trials, std::uint64_t seed,
                                      int jobs, const OuterOptions& opt) {
  if (n_trials < 1) throw DomainError("random_g_trials: need at least 1 trial");

  std::vector<SweepRow> rows(n_trials);
  parallel_for(rows.size(), jobs, [&](std::size_t t) {
    SystemInstance trial = inst;
    GaussianRng rng(derive_seed(seed, t + 1));
    for (auto& relay : trial.relays) relay.g = rng.complex_normal_pair(1.0);
    const OuterSolution out = optimize(trial, opt);
    rows[t] = {static_cast<double>(t), out.r1_bits, out.r2_bits, out.z_star,
               out.evaluations};
  });
  return rows;
}

EmpiricalInterference empirical_interference(
    const SystemInstance& inst, const std::vector<Herm2>& covariances,
    std::size_t n_samples, std::uint64_t seed) {
  if (covariances.size() != inst.relays.size()) {
    throw SizeError("empirical_interference: got " +
                    std::to_string(covariances.size()) +
                    " covariances for " +
                    std::to_string(inst.relays.size()) + " relays");
  }
  if (n_samples < 1) {
    throw DomainError("empirical_interference: need at least 1 sample");
  }

  // Factor each covariance once: Sigma = s_hi^2 v_hi v_hi^+ + s_lo^2 v_lo
  // v_lo^+, then n = s_hi xi_1 v_hi + s_lo xi_2 v_lo with xi ~ CN(0,1).
  struct Factor {
    CVec2 v_hi, v_lo;
    double s_hi, s_lo, sqrt_gamma;
  };
  std::vector<Factor> factors;
  factors.reserve(inst.relays.size());
  for (std::size_t i = 0; i < inst.relays.size(); ++i) {
    const Eig2 eig = herm_eig2(covariances[i]);
    // Eigenvalues at roundoff scale are structural zeros of a rank-deficient
    // covariance; taking their square root would inject a sqrt(eps)-sized
    // amplitude along a direction the covariance suppresses (Bob's channel,
    // under nulling), so clip them along with the genuinely negative ones.
    const double floor = 1e-12 * std::max(eig.lam_hi, 0.0);
    factors.push_back({eig.v_hi, eig.v_lo,
                       eig.lam_hi > floor ? std::sqrt(eig.lam_hi) : 0.0,
                       eig.lam_lo > floor ? std::sqrt(eig.lam_lo) : 0.0,
                       std::sqrt(inst.relays[i].gamma)});
  }

  GaussianRng rng(derive_seed(seed, 0));
  // Welford accumulation of mean and scatter for both received powers.
  double mean_b = 0.0, m2_b = 0.0, mean_e = 0.0, m2_e = 0.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    cx sum_b{};
    cx sum_e{};
    for (std::size_t i = 0; i < inst.relays.size(); ++i) {
      const Factor& fac = factors[i];
      const cx xi1 = rng.complex_normal(1.0);
      const cx xi2 = rng.complex_normal(1.0);
      const CVec2 noise{fac.s_hi * xi1 * fac.v_hi.c1 +
                            fac.s_lo * xi2 * fac.v_lo.c1,
                        fac.s_hi * xi1 * fac.v_hi.c2 +
                            fac.s_lo * xi2 * fac.v_lo.c2};
      sum_b += fac.sqrt_gamma * dot_t(inst.relays[i].h, noise);
      sum_e += fac.sqrt_gamma * dot_t(inst.relays[i].g, noise);
    }
    const double pb = std::norm(sum_b);
    const double pe = std::norm(sum_e);
    const double k = static_cast<double>(s + 1);
    const double db = pb - mean_b;
    mean_b += db / k;
    m2_b += db * (pb - mean_b);
    const double de = pe - mean_e;
    mean_e += de / k;
    m2_e += de * (pe - mean_e);
  }

  EmpiricalInterference out;
  out.n_samples = n_samples;
  out.bob_power = mean_b;
  out.eve_power = mean_e;
  if (n_samples > 1) {
    const double n = static_cast<double>(n_samples);
    out.bob_se = std::sqrt(m2_b / (n - 1.0) / n);
    out.eve_se = std::sqrt(m2_e / (n - 1.0) / n);
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "x,r1_bits,r2_bits,z_star,evaluations\n";
  for (const auto& row : rows) {
    out << fmt12(row.x) << ',' << fmt12(row.r1_bits) << ','
        << fmt12(row.r2_bits) << ',' << fmt12(row.z_star) << ','
        << row.evaluations << '\n';
  }
}

void write_csv(std::ostream& out, const EmpiricalInterference& e) {
  out << "n_samples,bob_power,eve_power,bob_se,eve_se\n";
  out << e.n_samples << ',' << fmt12(e.bob_power) << ',' << fmt12(e.eve_power)
      << ',' << fmt12(e.bob_se) << ',' << fmt12(e.eve_se) << '\n';
}

}  // namespace cojam
