#pragma once

#include "ngas/errors.hpp"
#include "ngas/model.hpp"
#include "ngas/numeric.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace ngas {

namespace detail {

inline void require_finite(const Real& x, const char* what) {
  if (!mp::isfinite(x)) throw DomainError(std::string("non-finite input: ") + what);
}

template <class F, class DF>
Real newton_polish(Real x, F f, DF df, int steps = 6) {
  for (int k = 0; k < steps; ++k) {
    Real d = df(x);
    if (d == 0) break;
    Real step = f(x) / d;
    x -= step;
    if (mp::abs(step) <= mp::abs(x) * std::numeric_limits<Real>::epsilon()) break;
  }
  return x;
}

inline Real kvalue_ssb(const SpectralIndex& s) {
  return to_real(Rational(5) * s.xi - Rational(1) / (Rational(4) * s.xi));
}

inline Real h_oaho(const SpectralIndex& s) {
  Rational x = s.xi;
  return to_real(x * x * x + Rational(7, 2) * x + Rational(9) / (Rational(16) * x));
}

}  // namespace detail

// Real root of x^3 - 3Px - 2Q = 0 by the Cardano form. With Q^2 < P^3 the two cube roots are
// complex conjugates; their sum is twice the real part of the principal root.
inline Real solve_depressed_cubic(const Real& P, const Real& Q) {
  detail::require_finite(P, "P");
  detail::require_finite(Q, "Q");
  Real D = Q * Q - P * P * P;
  Real x;
  if (D >= 0) {
    Real s = mp::sqrt(D);
    x = mp::cbrt(Q + s) + mp::cbrt(Q - s);
  } else {
    Real theta = mp::atan2(mp::sqrt(-D), Q);
    x = 2 * mp::sqrt(P) * mp::cos(theta / 3);
  }
  return detail::newton_polish(
      x, [&](const Real& t) { return t * t * t - 3 * P * t - 2 * Q; },
      [&](const Real& t) { return 3 * t * t - 3 * P; });
}

inline Real qaho_gap_residual(const Real& w, const Real& g, const SpectralIndex& s) {
  return w * w * w - w - 6 * g * to_real(f_xi(s));
}

inline Real qdwo_sr_gap_residual(const Real& w, const Real& g, const SpectralIndex& s) {
  return w * w * w + w - 6 * g * to_real(f_xi(s));
}

inline Real qdwo_ssb_gap_residual(const Real& w, const Real& g, const SpectralIndex& s) {
  return w * w * w - 2 * w + 6 * g * detail::kvalue_ssb(s);
}

inline Real saho_gap_residual(const Real& w, const Real& g, const SpectralIndex& s) {
  Real xi = to_real(s.xi);
  return mp::pow(w, 4) - w * w - Real(15) / 4 * g * (5 + 4 * xi * xi);
}

inline Real oaho_gap_residual(const Real& w, const Real& g, const SpectralIndex& s) {
  return mp::pow(w, 5) - mp::pow(w, 3) - 35 * g * detail::h_oaho(s);
}

inline Real qaho_omega(const Real& g, const SpectralIndex& s) {
  if (g < 0) throw DomainError("QAHO requires g >= 0");
  return solve_depressed_cubic(Real(1) / 3, 3 * g * to_real(f_xi(s)));
}

inline Real qdwo_sr_omega(const Real& g, const SpectralIndex& s) {
  if (g <= 0) throw DomainError("QDWO requires g > 0");
  return solve_depressed_cubic(Real(-1) / 3, 3 * g * to_real(f_xi(s)));
}

inline Real qdwo_critical_coupling(const SpectralIndex& s) {
  Real k = detail::kvalue_ssb(s);
  if (k <= 0) return Real(0);
  return mp::pow(Real(2) / 3, Real(3) / 2) / (3 * k);
}

inline Real ssb_sigma2(const Real& w, const Real& g, const SpectralIndex& s) {
  return (1 - 12 * g * to_real(s.xi) / w) / (4 * g);
}

inline constexpr double kPhaseBoundaryTol = 1e-10;

// Largest positive root of w^3 - 2w + 6g(5xi - 1/(4xi)) = 0 in the broken-symmetry phase.
inline Real qdwo_ssb_omega(const Real& g, const SpectralIndex& s, bool* at_boundary = nullptr) {
  if (g <= 0) throw DomainError("QDWO requires g > 0");
  if (at_boundary) *at_boundary = false;
  Real gc = qdwo_critical_coupling(s);
  Real P = Real(2) / 3;
  Real Q = -3 * g * detail::kvalue_ssb(s);
  Real w;
  if (mp::abs(g - gc) <= kPhaseBoundaryTol * gc) {
    // Double root at the boundary.
    w = mp::sqrt(P);
    if (at_boundary) *at_boundary = true;
  } else if (g > gc) {
    throw PhaseError("no broken-symmetry root for g above the critical coupling");
  } else {
    w = solve_depressed_cubic(P, Q);
  }
  if (w <= 0 || ssb_sigma2(w, g, s) <= 0) throw PhaseError("broken-symmetry root has sigma^2 <= 0");
  return w;
}

inline Real saho_omega(const Real& g, const SpectralIndex& s) {
  if (g < 0) throw DomainError("SAHO requires g >= 0");
  Real xi = to_real(s.xi);
  Real w2 = (1 + mp::sqrt(1 + 15 * g * (5 + 4 * xi * xi))) / 2;
  return mp::sqrt(w2);
}

inline Real oaho_omega(const Real& g, const SpectralIndex& s) {
  if (g < 0) throw DomainError("OAHO requires g >= 0");
  Real c = 35 * g * detail::h_oaho(s);
  if (c == 0) return Real(1);
  auto p = [&](const Real& w) { return mp::pow(w, 5) - mp::pow(w, 3) - c; };
  Real lo = 1, hi = 2 + mp::pow(c, Real(1) / 5);
  for (int it = 0; it < 60; ++it) {
    Real mid = (lo + hi) / 2;
    (p(mid) < 0 ? lo : hi) = mid;
  }
  Real w = detail::newton_polish(
      (lo + hi) / 2, p, [&](const Real& t) { return 5 * mp::pow(t, 4) - 3 * t * t; }, 20);
  if (mp::abs(p(w)) > Real(1e-14) * std::max(Real(1), c)) throw ConvergenceError("octic gap root did not converge");
  return w;
}

// Continued-fraction search for a small-denominator rational close to x.
inline std::optional<Rational> nearby_rational(const Real& x, long max_den = 1000000) {
  Real r = x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 60; ++it) {
    Real fl = mp::floor(r);
    Integer a(fl.convert_to<long long>());
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    Rational cand(p2, q2);
    if (mp::abs(to_real(cand) - x) <= Real(1e-40) * std::max(Real(1), mp::abs(x))) return cand;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Real frac = r - fl;
    if (frac == 0) break;
    r = 1 / frac;
  }
  return std::nullopt;
}

// Evaluates sum c_k w^k exactly.
inline Rational eval_poly(const std::vector<Rational>& c, const Rational& w) {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * w + *it;
  return acc;
}

}  // namespace ngas
