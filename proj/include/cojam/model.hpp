#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cojam/linalg2.hpp"

// Network description: one source (Alice), one destination (Bob), one
// eavesdropper (Eve), and N two-antenna helpers that transmit artificial
// noise.  All SNRs are power ratios; they enter every rate formula in linear
// scale but are stored and persisted canonically in dB (see RelayLink).
namespace cojam {

// dB -> linear power ratio, 10^(x/10).
double from_db(double x_db);

// linear power ratio -> dB.  Requires x > 0.
double to_db(double x_linear);

// One helper: channels to the destination (h) and to the eavesdropper (g),
// plus its transmit SNR.  gamma_db is the canonical stored value (what gets
// persisted); gamma is the derived linear cache every formula consumes.
// Mutate through set_gamma_db so the pair stays in sync.
struct RelayLink {
  CVec2 h{};
  CVec2 g{};
  double gamma_db = 0.0;
  double gamma = 1.0;
};

RelayLink make_relay(const CVec2& h, const CVec2& g, double gamma_db);
void set_gamma_db(RelayLink& relay, double gamma_db);

struct SystemInstance {
  cx h0{};  // source -> destination
  cx g0{};  // source -> eavesdropper
  double gamma0_db = 0.0;
  double gamma0 = 1.0;  // derived from gamma0_db; mutate via set_gamma0_db
  std::vector<RelayLink> relays;
};

void set_gamma0_db(SystemInstance& inst, double gamma0_db);
void set_all_relay_gammas_db(SystemInstance& inst, double gamma_db);

// Throws DomainError if any invariant fails: at least one relay, all channel
// coefficients finite, all SNRs finite and positive.
void check_instance(const SystemInstance& inst);

// The built-in five-relay worked example (fixed channel draws, SNRs
// (5, 2, 2, 2, 2, 2) dB).  This is the instance behind the `paper-example`
// CLI command and most of the golden values in the test suite.
SystemInstance example_instance();

// n relays with every channel coefficient i.i.d. circularly-symmetric complex
// Gaussian: total variance `variance`, split evenly between real and
// imaginary parts.  Deterministic in (n, seed, variance).  SNRs are left at
// their defaults (0 dB); set them afterwards via the setters above.
SystemInstance random_instance(std::size_t n, std::uint64_t seed,
                               double variance = 1.0);

// Persistence: a JSON document with fields h0, g0, gamma0_db and an array
// `relays` of {h, g, gamma_db}; complex numbers are [re, im] pairs.  The
// round trip load(save(x)) == x is bit-exact for every field.
void save_instance(const SystemInstance& inst, std::ostream& out);
void save_instance(const SystemInstance& inst, const std::string& path);
SystemInstance load_instance(std::istream& in);
SystemInstance load_instance(const std::string& path);

}  // namespace cojam
