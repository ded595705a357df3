#include <doctest.h>

#include <cmath>
#include <random>

#include "cojam/errors.hpp"
#include "cojam/linalg2.hpp"

namespace {

using namespace cojam;

double u01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

cx rand_cx(std::mt19937_64& eng) {
  return {2.0 * u01(eng) - 1.0, 2.0 * u01(eng) - 1.0};
}

CVec2 rand_vec(std::mt19937_64& eng) { return {rand_cx(eng), rand_cx(eng)}; }

Herm2 rand_herm(std::mt19937_64& eng) {
  return {4.0 * u01(eng) - 2.0, 4.0 * u01(eng) - 2.0, rand_cx(eng)};
}

// Hermitian inner product <x, y> = x^dagger y.
cx hip(const CVec2& x, const CVec2& y) { return dot_t(conj(x), y); }

double max_entry_diff(const Herm2& x, const Herm2& y) {
  return std::max(
      {std::abs(x.a - y.a), std::abs(x.d - y.d), std::abs(x.b - y.b)});
}

// The deterministic phase convention: the first component of magnitude above
// 1e-12 must be real and nonnegative.
void check_canonical(const CVec2& v) {
  const cx lead = (std::abs(v.c1) > 1e-12) ? v.c1 : v.c2;
  CHECK(std::abs(lead.imag()) <= 1e-12);
  CHECK(lead.real() >= -1e-12);
}

}  // namespace

TEST_SUITE("linalg2") {

TEST_CASE("identity matrix: doubly degenerate unit eigenvalue") {
  const Eig2 e = herm_eig2({1.0, 1.0, cx{0.0, 0.0}});
  CHECK(std::abs(e.lam_hi - 1.0) <= 1e-14);
  CHECK(std::abs(e.lam_lo - 1.0) <= 1e-14);
  // Degenerate case still yields an orthonormal pair.
  CHECK(std::abs(hip(e.v_hi, e.v_lo)) <= 1e-12);
  CHECK(std::abs(e.v_hi.norm() - 1.0) <= 1e-12);
  CHECK(std::abs(e.v_lo.norm() - 1.0) <= 1e-12);
}

TEST_CASE("diag(2, 0): coordinate eigenvectors, exact eigenvalues") {
  const Eig2 e = herm_eig2({2.0, 0.0, cx{0.0, 0.0}});
  CHECK(e.lam_hi == 2.0);
  CHECK(e.lam_lo == 0.0);
  CHECK(e.v_hi.c1 == cx{1.0, 0.0});
  CHECK(e.v_hi.c2 == cx{0.0, 0.0});
  CHECK(e.v_lo.c1 == cx{0.0, 0.0});
  CHECK(e.v_lo.c2 == cx{1.0, 0.0});
}

TEST_CASE("rank-one g g-dagger: top eigenvalue is the squared norm") {
  const CVec2 g{cx{0.22, -0.03}, cx{0.88, 0.15}};
  const Herm2 m = outer_self(g);
  const Eig2 e = herm_eig2(m);
  CHECK(std::abs(e.lam_hi - 0.8462) <= 1e-12);  // |g|^2 by direct summation
  CHECK(std::abs(e.lam_hi - g.norm2()) <= 1e-14);
  CHECK(std::abs(e.lam_lo) <= 1e-14);
  // Top eigenvector spans the same line as g.
  CHECK(std::abs(std::abs(hip(e.v_hi, g)) - g.norm()) <= 1e-12);
}

TEST_CASE("random matrices: reconstruction, residuals, orthonormality") {
  std::mt19937_64 eng(0xA11CE5u);
  for (int k = 0; k < 300; ++k) {
    const Herm2 m = rand_herm(eng);
    const Eig2 e = herm_eig2(m);

    CHECK(e.lam_hi >= e.lam_lo);
    CHECK(std::abs(e.v_hi.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(e.v_lo.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(hip(e.v_hi, e.v_lo)) <= 1e-10);
    check_canonical(e.v_hi);
    check_canonical(e.v_lo);

    const Herm2 rebuilt =
        e.lam_hi * outer_self(e.v_hi) + e.lam_lo * outer_self(e.v_lo);
    CHECK(max_entry_diff(rebuilt, m) <= 1e-10);

    CHECK(std::abs(m.trace() - (e.lam_hi + e.lam_lo)) <=
          1e-12 * (1.0 + std::abs(m.trace())));

    for (const double lam : {e.lam_hi, e.lam_lo}) {
      const CVec2& v = (lam == e.lam_hi) ? e.v_hi : e.v_lo;
      const CVec2 mv = mat_vec(m, v);
      const CVec2 resid{mv.c1 - lam * v.c1, mv.c2 - lam * v.c2};
      CHECK(resid.norm() <= 1e-10 * (1.0 + std::abs(lam)));
    }
  }
}

TEST_CASE("null direction: convention, orthogonality, zero channel") {
  const CVec2 e1{cx{1.0, 0.0}, cx{0.0, 0.0}};
  const CVec2 u = null_direction(e1);
  CHECK(u.c1 == cx{0.0, 0.0});
  CHECK(u.c2 == cx{1.0, 0.0});

  // A worked channel row: the residual must vanish to rounding.
  const CVec2 h{cx{0.76, -0.64}, cx{-0.10, -0.84}};
  const CVec2 w = null_direction(h);
  CHECK(std::abs(dot_t(h, w)) <= 1e-12 * h.norm());
  CHECK(std::abs(w.norm() - 1.0) <= 1e-12);
  CHECK(w.c1 == -h.c2 / h.norm());
  CHECK(w.c2 == h.c1 / h.norm());

  CHECK_THROWS_AS(null_direction({cx{0.0, 0.0}, cx{0.0, 0.0}}), ZeroChannel);
  // The tolerance parameter rejects channels that are merely tiny.
  CHECK_THROWS_AS(null_direction({cx{1e-3, 0.0}, cx{0.0, 0.0}}, 1e-2),
                  ZeroChannel);
  CHECK_NOTHROW(null_direction({cx{1e-3, 0.0}, cx{0.0, 0.0}}, 1e-4));
}

TEST_CASE("null direction kills the quadratic form for random channels") {
  std::mt19937_64 eng(0xBEEFu);
  for (int k = 0; k < 100; ++k) {
    const CVec2 h = rand_vec(eng);
    if (h.norm2() == 0.0) continue;
    const CVec2 u = null_direction(h);
    // Through the rounded outer-product entries the cancellation bottoms out
    // near eps * |h|^2; a generic unit direction would leak about |h|^2 / 2,
    // fourteen orders of magnitude above this bound.
    const double leak = quad_form(outer_self(u), h);
    const double n2 = h.norm2();
    CHECK(std::abs(leak) <= 1e-14 * n2);
  }
}

TEST_CASE("quadratic form: fixed values and algebraic consistency") {
  const Herm2 eye{1.0, 1.0, cx{0.0, 0.0}};
  CHECK(quad_form(eye, {cx{1.0, 0.0}, cx{0.0, 1.0}}) == 2.0);
  CHECK(quad_form(Herm2{1.0, 0.0, cx{0.0, 0.0}},
                  {cx{0.0, 0.0}, cx{1.0, 0.0}}) == 0.0);

  std::mt19937_64 eng(0xF00Du);
  for (int k = 0; k < 100; ++k) {
    const Herm2 s = rand_herm(eng);
    const CVec2 v = rand_vec(eng);

    // quad_form(S, v) = v^T (S v^*), evaluated through mat_vec.
    const cx via_matvec = dot_t(v, mat_vec(s, conj(v)));
    CHECK(std::abs(via_matvec.imag()) <= 1e-12 * (1.0 + std::abs(via_matvec)));
    CHECK(std::abs(quad_form(s, v) - via_matvec.real()) <=
          1e-12 * (1.0 + std::abs(via_matvec.real())));

    // Invariance under a global phase on v.
    const double ang = 6.283185307179586 * u01(eng);
    const cx phase{std::cos(ang), std::sin(ang)};
    const CVec2 rot{v.c1 * phase, v.c2 * phase};
    CHECK(std::abs(quad_form(s, rot) - quad_form(s, v)) <=
          1e-12 * (1.0 + std::abs(quad_form(s, v))));

    // Rank-one form: quad_form(u u^dagger, v) = |u^T v|^2.
    const CVec2 u = rand_vec(eng);
    const double expected = std::norm(dot_t(u, v));
    CHECK(std::abs(quad_form(outer_self(u), v) - expected) <=
          1e-12 * (1.0 + expected));
  }
}

TEST_CASE("trace product matches the explicit matrix trace") {
  const Herm2 s{1.0, 2.0, cx{0.0, 1.0}};
  const Herm2 t{3.0, 4.0, cx{1.0, 1.0}};
  // Tr(S T) for these entries works out to 13 by hand.
  CHECK(std::abs(trace_product(s, t) - 13.0) <= 1e-14);
  CHECK(trace_product(s, t) == trace_product(t, s));
}

TEST_CASE("PSD test uses a scale-relative tolerance") {
  std::mt19937_64 eng(0xD00Du);
  for (int k = 0; k < 50; ++k) {
    CHECK(outer_self(rand_vec(eng)).is_psd());
  }
  CHECK_FALSE(Herm2{1.0, 1.0, cx{2.0, 0.0}}.is_psd());   // det = -3
  CHECK(Herm2{-1e-12, 1.0, cx{0.0, 0.0}}.is_psd());      // within tolerance
  CHECK_FALSE(Herm2{-1e-3, 1.0, cx{0.0, 0.0}}.is_psd());
  CHECK(Herm2{1e6, 1e6, cx{1e6, 0.0}}.is_psd());         // det = 0 at scale 1e6
}

TEST_CASE("outer product: trace, positivity, arithmetic operators") {
  std::mt19937_64 eng(0xCAFEu);
  const CVec2 v = rand_vec(eng);
  const Herm2 p = outer_self(v);
  CHECK(std::abs(p.trace() - v.norm2()) <= 1e-15 * (1.0 + v.norm2()));
  CHECK(p.is_psd());

  const Herm2 q = rand_herm(eng);
  const Herm2 sum = p + q;
  CHECK(sum.a == p.a + q.a);
  CHECK(sum.d == p.d + q.d);
  CHECK(sum.b == p.b + q.b);
  const Herm2 scaled = 2.5 * q;
  CHECK(scaled.a == 2.5 * q.a);
  CHECK(scaled.trace() == doctest::Approx(2.5 * q.trace()).epsilon(1e-14));
}

}  // TEST_SUITE
