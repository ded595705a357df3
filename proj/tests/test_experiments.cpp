#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cojam/errors.hpp"
#include "cojam/experiments.hpp"
#include "cojam/nulling.hpp"
#include "cojam/validation.hpp"

namespace {

using namespace cojam;

bool same_rows(const std::vector<SweepRow>& a, const std::vector<SweepRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].x != b[i].x || a[i].r1_bits != b[i].r1_bits ||
        a[i].r2_bits != b[i].r2_bits || a[i].z_star != b[i].z_star ||
        a[i].evaluations != b[i].evaluations) {
      return false;
    }
  }
  return true;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("rate-curve sweep: grid layout and the nulling anchor") {
  const SystemInstance inst = example_instance();
  const auto rows = sweep_z(inst, 0.0, 0.5, 11);
  REQUIRE(rows.size() == 11);

  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(std::abs(rows[k].x - 0.05 * static_cast<double>(k)) <= 1e-12);
    CHECK(rows[k].r1_bits == rows[0].r1_bits);  // constant column
    CHECK(rows[k].z_star == rows[k].x);
    CHECK(std::isfinite(rows[k].r2_bits));
  }
  CHECK(std::abs(rows[0].r2_bits - rows[0].r1_bits) <= 1e-8);
  CHECK(std::abs(rows[0].r1_bits - 0.6332) <= 5e-4);
}

TEST_CASE("rate-curve sweep: job count never changes the rows") {
  const SystemInstance inst = example_instance();
  const auto serial = sweep_z(inst, 0.0, 0.5, 9, 1);
  const auto parallel = sweep_z(inst, 0.0, 0.5, 9, 4);
  CHECK(same_rows(serial, parallel));
}

TEST_CASE("rate-curve sweep: domain validation") {
  const SystemInstance inst = example_instance();
  CHECK_THROWS_AS(sweep_z(inst, 0.5, 0.5, 11), DomainError);
  CHECK_THROWS_AS(sweep_z(inst, 0.6, 0.5, 11), DomainError);
  CHECK_THROWS_AS(sweep_z(inst, -0.1, 0.5, 11), DomainError);
  CHECK_THROWS_AS(sweep_z(inst, 0.0, 2.0 * z_max(inst), 11), DomainError);
  CHECK_THROWS_AS(sweep_z(inst, 0.0, 0.5, 1), DomainError);
}

TEST_CASE("source-SNR sweep: endpoints and dominance") {
  const SystemInstance inst = example_instance();
  const auto rows = sweep_gamma0(inst, 5.0, 10.0, 3, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].x == 5.0);
  CHECK(std::abs(rows[1].x - 7.5) <= 1e-12);
  CHECK(rows[2].x == 10.0);

  CHECK(std::abs(rows[0].r1_bits - 0.6332) <= 5e-4);
  CHECK(std::abs(rows[0].r2_bits - 0.6439) <= 2e-3);
  for (const auto& row : rows) {
    CHECK(row.r2_bits >= row.r1_bits - 1e-9);
    CHECK(row.z_star >= 0.0);
  }

  CHECK_THROWS_AS(sweep_gamma0(inst, 10.0, 5.0, 3), DomainError);
  CHECK_THROWS_AS(sweep_gamma0(inst, 5.0, 10.0, 1), DomainError);
}

TEST_CASE("random eavesdropper trials: reproducible and dominant") {
  const SystemInstance inst = example_instance();
  const auto rows = random_g_trials(inst, 5, 123);
  REQUIRE(rows.size() == 5);
  CHECK(same_rows(rows, random_g_trials(inst, 5, 123)));
  CHECK(same_rows(rows, random_g_trials(inst, 5, 123, 3)));

  bool r1_varies = false;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    CHECK(rows[t].x == static_cast<double>(t));
    CHECK(rows[t].r2_bits >= rows[t].r1_bits - 1e-9);
    if (rows[t].r1_bits != rows[0].r1_bits) r1_varies = true;
  }
  CHECK(r1_varies);  // redrawn eavesdropper channels move the nulling rate

  const auto other_seed = random_g_trials(inst, 5, 124);
  CHECK_FALSE(same_rows(rows, other_seed));

  CHECK_THROWS_AS(random_g_trials(inst, 0, 123), DomainError);
}

TEST_CASE("sampled noise reproduces the analytic interference powers") {
  const SystemInstance inst = example_instance();
  const NullingSolution nulling = solve_nulling(inst);

  // Nulling covariances: the destination hears nothing but rounding.
  const EmpiricalInterference en =
      empirical_interference(inst, nulling.covariances, 2000, 9);
  CHECK(en.n_samples == 2000);
  CHECK(en.bob_power <= 1e-20 * z_max(inst));
  CHECK(std::abs(en.eve_power - nulling.eve_interference) <=
        3.0 * en.eve_se);

  // Isotropic half-power covariance with known quadratic forms.
  SystemInstance iso;
  iso.h0 = cx{1.0, 0.0};
  iso.g0 = cx{1.0, 0.0};
  set_gamma0_db(iso, 0.0);
  iso.relays.push_back(
      make_relay({cx{1.0, 0.0}, cx{0.0, 0.0}}, {cx{1.0, 0.0}, cx{1.0, 0.0}},
                 0.0));
  const std::vector<Herm2> half_eye{Herm2{0.5, 0.5, cx{0.0, 0.0}}};
  const EmpiricalInterference ei =
      empirical_interference(iso, half_eye, 200000, 5);
  CHECK(std::abs(ei.eve_power - 1.0) <= 3.0 * ei.eve_se);
  CHECK(std::abs(ei.bob_power - 0.5) <= 3.0 * ei.bob_se);
  CHECK(ei.eve_se <= 0.01);

  // Determinism in the seed.
  const EmpiricalInterference again =
      empirical_interference(iso, half_eye, 1000, 5);
  const EmpiricalInterference third =
      empirical_interference(iso, half_eye, 1000, 5);
  CHECK(again.eve_power == third.eve_power);
  CHECK(again.bob_power == third.bob_power);

  CHECK_THROWS_AS(empirical_interference(iso, {}, 100, 5), SizeError);
  CHECK_THROWS_AS(empirical_interference(iso, half_eye, 0, 5), DomainError);
}

TEST_CASE("CSV emission: headers, shape, and 12-digit round trip") {
  const SystemInstance inst = example_instance();
  const auto rows = sweep_z(inst, 0.0, 0.5, 5);
  std::ostringstream out;
  write_csv(out, rows);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "x,r1_bits,r2_bits,z_star,evaluations");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    double x = 0.0, r1 = 0.0, r2 = 0.0, zs = 0.0;
    unsigned long ev = 0;
    REQUIRE(std::sscanf(lines[i].c_str(), "%lf,%lf,%lf,%lf,%lu", &x, &r1, &r2,
                        &zs, &ev) == 5);
    const SweepRow& row = rows[i - 1];
    CHECK(std::abs(x - row.x) <= 1e-11 * (1.0 + std::abs(row.x)));
    CHECK(std::abs(r2 - row.r2_bits) <=
          1e-11 * (1.0 + std::abs(row.r2_bits)));
    CHECK(ev == row.evaluations);
  }

  EmpiricalInterference e;
  e.n_samples = 7;
  e.bob_power = 1.25e-21;
  e.eve_power = 3.5;
  e.bob_se = 1e-22;
  e.eve_se = 0.01;
  std::ostringstream out2;
  write_csv(out2, e);
  const auto lines2 = lines_of(out2.str());
  REQUIRE(lines2.size() == 2);
  CHECK(lines2[0] == "n_samples,bob_power,eve_power,bob_se,eve_se");
  CHECK(lines2[1] == "7,1.25e-21,3.5,1e-22,0.01");
}

TEST_CASE("validation suites pass at reduced size") {
  const SuiteReport gaps = check_duality_gaps(4, 6, 42);
  CHECK(gaps.passed);
  CHECK(gaps.metric <= 1e-6);

  const SuiteReport concave = check_concavity(12, 42);
  CHECK(concave.passed);
  CHECK(concave.metric >= -1e-6);
}

}  // TEST_SUITE
