#include "cojam/nulling.hpp"

#include <cmath>

#include "cojam/errors.hpp"

namespace cojam {

namespace {

// Per-relay leakage gamma_i * |g_i^T h_i_perp|^2, computed through the
// covariance quadratic form.  Shared by solve_nulling and r1_of_weights so
// the full-power weighted rate reduces to the unweighted one exactly (the
// two sums are term-for-term identical).
double relay_leak(const RelayLink& relay, const Herm2& cov) {
  return relay.gamma * quad_form(cov, relay.g);
}

double secrecy_rate_bits(const SystemInstance& inst, double eve_interference) {
  const double bob = bob_rate_bits(inst);
  const double eve =
      std::log2(1.0 + inst.gamma0 * std::norm(inst.g0) /
                          (eve_interference + 1.0));
  return bob - eve;
}

}  // namespace

double bob_rate_bits(const SystemInstance& inst) {
  return std::log2(1.0 + inst.gamma0 * std::norm(inst.h0));
}

NullingSolution solve_nulling(const SystemInstance& inst) {
  NullingSolution sol;
  sol.directions.reserve(inst.relays.size());
  sol.covariances.reserve(inst.relays.size());
  for (const auto& relay : inst.relays) {
    const CVec2 dir = null_direction(relay.h);
    sol.directions.push_back(dir);
    sol.covariances.push_back(outer_self(dir));
    sol.eve_interference += relay_leak(relay, sol.covariances.back());
  }
  sol.r1_bits = secrecy_rate_bits(inst, sol.eve_interference);
  return sol;
}

double r1_of_weights(const SystemInstance& inst,
                     std::span<const double> fractions) {
  if (fractions.size() != inst.relays.size()) {
    throw SizeError("r1_of_weights: got " + std::to_string(fractions.size()) +
                    " fractions for " + std::to_string(inst.relays.size()) +
                    " relays");
  }
  double eve_interference = 0.0;
  for (std::size_t i = 0; i < inst.relays.size(); ++i) {
    const double f = fractions[i];
    if (!(f >= 0.0 && f <= 1.0)) {
      throw DomainError("r1_of_weights: fraction " + std::to_string(f) +
                        " at index " + std::to_string(i) +
                        " outside [0, 1]");
    }
    const CVec2 dir = null_direction(inst.relays[i].h);
    eve_interference += f * relay_leak(inst.relays[i], outer_self(dir));
  }
  return secrecy_rate_bits(inst, eve_interference);
}

}  // namespace cojam
