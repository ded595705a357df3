#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cojam/experiments.hpp"

// Library-level invariant suites: duality-gap certificates, concavity of
// F(z), quasi-concavity of R2(z), and brute-force oracle agreement.  The
// `validate` CLI command and the acceptance test binary both run exactly
// these functions, so there is one definition of each check.
namespace cojam {

struct SuiteReport {
  std::string name;
  bool passed = false;
  double metric = 0.0;  // suite-specific figure of merit (see detail)
  std::string detail;
};

// Standard random test instance: n relays with CN(0,1) channels, source SNR
// 5 dB, relay SNRs 2 dB (the worked example's scales).  `stream`
// distinguishes instances drawn from the same master seed.
SystemInstance random_test_instance(std::size_t n_relays, std::uint64_t seed,
                                    std::uint64_t stream);

// Weak duality and certificate quality: over n_seeds instances (relay count
// cycling 1..10) x z_per_seed interior z values, every solve must satisfy
// gap >= -1e-9 and gap <= 1e-6 * (1 + |F|).  Metric: max relative gap.
SuiteReport check_duality_gaps(int n_seeds = 20, int z_per_seed = 10,
                               std::uint64_t seed = 42);

// Midpoint concavity of F: for random (instance, z1, z2) and
// t in {0.25, 0.5, 0.75}, F(t z1 + (1-t) z2) >= t F(z1) + (1-t) F(z2) - 1e-6.
// Metric: minimum slack observed.
SuiteReport check_concavity(int n_tuples = 100, std::uint64_t seed = 42);

// Unimodality witness for R2 on a uniform grid over [0, z_max]: the sequence
// never rises by more than 1e-7 after having fallen by more than 1e-7.
// Runs on the built-in example plus n_random random instances.  Metric:
// number of violations.
SuiteReport check_quasiconcavity(int n_random = 10, std::uint64_t seed = 42,
                                 int grid_points = 200);

// Brute-force agreement: on n_instances with at most two relays, at five
// z fractions of z_max, the grid oracle (step 0.05, slack 0.02 z_max) must
// stay within F plus the slack propagated through the objective's local
// Lipschitz constant (|mu| at the window edges): oracle - F <= L*slack + 1e-6.
// Metric: max raw excess max(oracle - F, 0); also required <= 0.1.
SuiteReport check_oracle_agreement(int n_instances = 50,
                                   std::uint64_t seed = 42);

// All four suites with default sizes scaled by `seeds` where applicable.
std::vector<SuiteReport> run_all_suites(int seeds = 20,
                                        std::uint64_t seed = 42);

}  // namespace cojam
