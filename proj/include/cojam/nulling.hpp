#pragma once

#include <span>
#include <vector>

#include "cojam/model.hpp"

// The local-knowledge jamming scheme: every helper aims its noise along the
// direction its own destination channel cannot see (h_perp), so the
// destination receives zero jamming power while the eavesdropper picks up
// whatever leaks through g.  Closed form, no optimization.
namespace cojam {

struct NullingSolution {
  std::vector<CVec2> directions;    // h_perp per relay, unit norm
  std::vector<Herm2> covariances;   // h_perp h_perp^dagger per relay
  double eve_interference = 0.0;    // sum_i gamma_i |g_i^T h_i_perp|^2
  double r1_bits = 0.0;             // secrecy rate, bits per channel use
};

// Destination rate term log2(1 + gamma0 |h0|^2); relay-independent.
double bob_rate_bits(const SystemInstance& inst);

// Full-power nulling at every relay.  Throws ZeroChannel (propagated from
// null_direction) if any relay's destination channel is zero.  The rate is
// the unclamped difference of the two log terms; negative values are
// meaningful and kept.
NullingSolution solve_nulling(const SystemInstance& inst);

// Secrecy rate when relay i spends only the fraction fractions[i] of its
// power on nulling noise: the eavesdropper interference becomes
// sum_i fractions[i] gamma_i |g_i^T h_i_perp|^2.  Each fraction must lie in
// [0, 1] (DomainError otherwise); fractions.size() must match the relay
// count (SizeError).  At all-ones this equals solve_nulling exactly.
double r1_of_weights(const SystemInstance& inst,
                     std::span<const double> fractions);

}  // namespace cojam
