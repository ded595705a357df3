#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "cojam/errors.hpp"

// Dense complex 2-vectors and 2x2 Hermitian matrices, the only linear algebra
// this library needs: every relay has two transmit antennas, so every noise
// covariance is a 2x2 Hermitian PSD matrix and every channel a 2-vector.
// Everything here is closed-form; no iterative factorizations.
namespace cojam {

using cx = std::complex<double>;

struct CVec2 {
  cx c1{};
  cx c2{};

  double norm2() const { return std::norm(c1) + std::norm(c2); }
  double norm() const { return std::sqrt(norm2()); }
};

inline CVec2 conj(const CVec2& v) { return {std::conj(v.c1), std::conj(v.c2)}; }

// Transpose (unconjugated) dot product a^T b.  The channel model is written
// with transposes, not adjoints, so this is the pairing used throughout.
inline cx dot_t(const CVec2& a, const CVec2& b) { return a.c1 * b.c1 + a.c2 * b.c2; }

// 2x2 Hermitian matrix [[a, b], [conj(b), d]] with real diagonal a, d.
struct Herm2 {
  double a{};
  double d{};
  cx b{};

  double trace() const { return a + d; }
  double det() const { return a * d - std::norm(b); }

  // PSD test with a relative tolerance: diagonals against tol*s and the
  // determinant against tol*s^2, where s = max(1, |a|+|d|) sets the scale.
  bool is_psd(double tol = 1e-10) const {
    const double s = std::max(1.0, std::abs(a) + std::abs(d));
    return a >= -tol * s && d >= -tol * s && det() >= -tol * s * s;
  }
};

inline Herm2 operator+(const Herm2& x, const Herm2& y) {
  return {x.a + y.a, x.d + y.d, x.b + y.b};
}

inline Herm2 operator*(double s, const Herm2& m) { return {s * m.a, s * m.d, s * m.b}; }

// Rank-one outer product v v^dagger (always Hermitian PSD, trace = |v|^2).
inline Herm2 outer_self(const CVec2& v) {
  return {std::norm(v.c1), std::norm(v.c2), v.c1 * std::conj(v.c2)};
}

inline CVec2 mat_vec(const Herm2& m, const CVec2& v) {
  return {m.a * v.c1 + m.b * v.c2, std::conj(m.b) * v.c1 + m.d * v.c2};
}

// Quadratic form v^T S v^* (note: transpose, conjugate on the right).  For a
// Hermitian S this is real; it is the received power of noise with covariance
// S across a channel v, the quantity both Bob's and Eve's interference use.
inline double quad_form(const Herm2& s, const CVec2& v) {
  return s.a * std::norm(v.c1) + s.d * std::norm(v.c2) +
         2.0 * std::real(s.b * v.c1 * std::conj(v.c2));
}

// Tr(S T) for Hermitian S, T (real).  Used by duality-gap certificates.
inline double trace_product(const Herm2& s, const Herm2& t) {
  return s.a * t.a + s.d * t.d + 2.0 * std::real(s.b * std::conj(t.b));
}

// Rotate a vector so its first component of magnitude > 1e-12 is real and
// positive.  Pins down the free global phase so eigenvectors are deterministic
// and comparable across runs.
inline CVec2 canonical_phase(const CVec2& v) {
  const cx lead = (std::abs(v.c1) > 1e-12) ? v.c1 : v.c2;
  const double mag = std::abs(lead);
  if (mag <= 1e-12) return v;
  const cx rot = std::conj(lead) / mag;
  return {v.c1 * rot, v.c2 * rot};
}

struct Eig2 {
  double lam_hi{};
  double lam_lo{};
  CVec2 v_hi{};
  CVec2 v_lo{};
};

// Closed-form eigendecomposition of a 2x2 Hermitian matrix.
//
//   lam = tr/2 +- sqrt((a-d)^2/4 + |b|^2)
//
// The root of larger magnitude is taken from the quadratic formula (no
// cancellation on that branch); the other root is det/dominant, which stays
// accurate when the two roots differ by orders of magnitude.  The eigenvector
// comes from whichever residual row of (M - lam I) has the larger norm -- the
// better-conditioned choice; its orthogonal complement is the other
// eigenvector, exactly unit and orthogonal by construction.
inline Eig2 herm_eig2(const Herm2& m) {
  const double tr = m.trace();
  const double half_gap = 0.5 * (m.a - m.d);
  const double r = std::hypot(half_gap, std::abs(m.b));

  double lam_hi;
  double lam_lo;
  if (r == 0.0) {
    lam_hi = lam_lo = 0.5 * tr;
  } else {
    const double dominant = 0.5 * tr + std::copysign(r, tr);
    const double other = m.det() / dominant;
    lam_hi = std::max(dominant, other);
    lam_lo = std::min(dominant, other);
  }

  // Candidate eigenvectors for lam_hi: row 1 gives (b, lam-a), row 2 gives
  // (lam-d, conj(b)).  Their norms are computable without cancellation.
  const double babs = std::abs(m.b);
  const double n1 = std::hypot(babs, lam_hi - m.a);
  const double n2 = std::hypot(lam_hi - m.d, babs);
  const double scale =
      std::max({std::abs(m.a), std::abs(m.d), babs, std::abs(lam_hi)});

  CVec2 v_hi;
  if (std::max(n1, n2) <= 1e-14 * std::max(1.0, scale)) {
    // (Near-)scalar matrix: any orthonormal basis is an eigenbasis.
    v_hi = {cx{1.0, 0.0}, cx{0.0, 0.0}};
  } else if (n1 >= n2) {
    v_hi = {m.b / n1, cx{(lam_hi - m.a) / n1, 0.0}};
  } else {
    v_hi = {cx{(lam_hi - m.d) / n2, 0.0}, std::conj(m.b) / n2};
  }

  v_hi = canonical_phase(v_hi);
  const CVec2 v_lo =
      canonical_phase({-std::conj(v_hi.c2), std::conj(v_hi.c1)});
  return {lam_hi, lam_lo, v_hi, v_lo};
}

// Unit vector orthogonal (under the transpose pairing) to h:
// h_perp = (-h2, h1)/|h|, so h^T h_perp = 0 identically.  Noise aimed along
// this direction is invisible to the channel h.
inline CVec2 null_direction(const CVec2& h, double tol = 0.0) {
  const double n = h.norm();
  if (!(n > tol)) {
    throw ZeroChannel("null_direction: channel norm " + std::to_string(n) +
                      " is not above tolerance " + std::to_string(tol));
  }
  return {-h.c2 / n, h.c1 / n};
}

}  // namespace cojam
