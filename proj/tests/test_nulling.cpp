#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "cojam/errors.hpp"
#include "cojam/nulling.hpp"

namespace {

using namespace cojam;

double u01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// The rate difference evaluated directly from an interference total, for
// cross-checking against the library path.
double rate_from_interference(const SystemInstance& inst, double total) {
  return std::log2(1.0 + inst.gamma0 * std::norm(inst.h0)) -
         std::log2(1.0 + inst.gamma0 * std::norm(inst.g0) / (total + 1.0));
}

}  // namespace

TEST_SUITE("nulling") {

TEST_CASE("worked example: rate and interference") {
  const NullingSolution sol = solve_nulling(example_instance());
  CHECK(std::abs(sol.r1_bits - 0.6332) <= 5e-4);
  CHECK(std::abs(sol.eve_interference - 7.128) <= 5e-3);
  // Regression pins at full precision.
  CHECK(std::abs(sol.r1_bits - 0.63322130235305934) <= 1e-9);
  CHECK(std::abs(sol.eve_interference - 7.1277640135827636) <= 1e-9);
}

TEST_CASE("solution invariants: unit directions, PSD unit-trace, no leak") {
  const SystemInstance inst = example_instance();
  const NullingSolution sol = solve_nulling(inst);
  REQUIRE(sol.directions.size() == inst.relays.size());
  REQUIRE(sol.covariances.size() == inst.relays.size());
  CHECK(sol.eve_interference >= 0.0);

  for (std::size_t i = 0; i < inst.relays.size(); ++i) {
    CHECK(std::abs(sol.directions[i].norm() - 1.0) <= 1e-12);
    CHECK(sol.covariances[i].is_psd());
    CHECK(std::abs(sol.covariances[i].trace() - 1.0) <= 1e-12);
    const double n2 = inst.relays[i].h.norm2();
    // Roundoff floor of the covariance quadratic form; a non-nulled unit
    // direction would put O(|h|^2) interference at Bob.
    CHECK(quad_form(sol.covariances[i], inst.relays[i].h) <=
          1e-14 * (1.0 + n2));
  }
}

TEST_CASE("eavesdropper channel orthogonal to the noise: zero interference") {
  SystemInstance inst;
  inst.h0 = cx{0.4, 0.1};
  inst.g0 = cx{0.9, -0.2};
  set_gamma0_db(inst, 5.0);
  // h = e1 puts the noise along e2; g along e1 hears none of it.
  inst.relays.push_back(
      make_relay({cx{1.0, 0.0}, cx{0.0, 0.0}}, {cx{3.0, 0.0}, cx{0.0, 0.0}},
                 2.0));
  const NullingSolution sol = solve_nulling(inst);
  CHECK(sol.eve_interference == 0.0);
  CHECK(sol.r1_bits ==
        std::log2(1.0 + inst.gamma0 * std::norm(inst.h0)) -
            std::log2(1.0 + inst.gamma0 * std::norm(inst.g0)));
}

TEST_CASE("weighted rate: endpoints, monotonicity, validation") {
  const SystemInstance inst = example_instance();
  const NullingSolution sol = solve_nulling(inst);

  const std::array<double, 5> ones{1.0, 1.0, 1.0, 1.0, 1.0};
  CHECK(r1_of_weights(inst, ones) == sol.r1_bits);

  const std::array<double, 5> zeros{0.0, 0.0, 0.0, 0.0, 0.0};
  CHECK(r1_of_weights(inst, zeros) == rate_from_interference(inst, 0.0));

  std::mt19937_64 eng(555);
  for (int k = 0; k < 25; ++k) {
    std::array<double, 5> f{};
    std::array<double, 5> f_hi{};
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = u01(eng);
      f_hi[i] = f[i] + (1.0 - f[i]) * u01(eng);
    }
    CHECK(r1_of_weights(inst, f_hi) >= r1_of_weights(inst, f) - 1e-12);
  }

  CHECK_THROWS_AS(r1_of_weights(inst, std::array<double, 5>{1.5, 0, 0, 0, 0}),
                  DomainError);
  CHECK_THROWS_AS(r1_of_weights(inst, std::array<double, 5>{-0.1, 0, 0, 0, 0}),
                  DomainError);
  CHECK_THROWS_AS(r1_of_weights(inst, std::array<double, 3>{1, 1, 1}),
                  SizeError);
}

TEST_CASE("rate is invariant under a phase rotation of any direction") {
  const SystemInstance inst = example_instance();
  const NullingSolution sol = solve_nulling(inst);

  for (const double ang : {0.7, 2.3, -1.1}) {
    const cx phase{std::cos(ang), std::sin(ang)};
    double total = 0.0;
    for (std::size_t i = 0; i < inst.relays.size(); ++i) {
      const CVec2 rotated{sol.directions[i].c1 * phase,
                          sol.directions[i].c2 * phase};
      total += inst.relays[i].gamma *
               std::norm(dot_t(inst.relays[i].g, rotated));
    }
    const double r1_rotated = rate_from_interference(inst, total);
    CHECK(std::abs(r1_rotated - sol.r1_bits) <= 1e-12);
  }
}

TEST_CASE("destination rate term ignores all relay quantities") {
  SystemInstance inst = example_instance();
  const double before = bob_rate_bits(inst);
  inst.relays[0].g = {cx{9.0, 9.0}, cx{-9.0, 9.0}};
  inst.relays[3].g = {cx{0.0, 0.0}, cx{0.0, 0.0}};
  CHECK(bob_rate_bits(inst) == before);
}

TEST_CASE("zero destination channel propagates ZeroChannel") {
  SystemInstance inst = example_instance();
  inst.relays[2].h = {cx{0.0, 0.0}, cx{0.0, 0.0}};
  CHECK_THROWS_AS(solve_nulling(inst), ZeroChannel);
  const std::array<double, 5> ones{1.0, 1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(r1_of_weights(inst, ones), ZeroChannel);
}

}  // TEST_SUITE
