#pragma once

#include "ngas/errors.hpp"
#include "ngas/gap.hpp"
#include "ngas/numeric.hpp"

#include <boost/math/constants/constants.hpp>

#include <optional>
#include <vector>

namespace ngas {

enum class SwModel { AHO, SHO, DWO };

inline SwModel parse_sw_model(std::string_view s) {
  switch (parse_kind(s)) {
    case Kind::QAHO: return SwModel::AHO;
    case Kind::SHO: return SwModel::SHO;
    case Kind::QDWO: return SwModel::DWO;
    default: throw DomainError("square-well approximation supports AHO, SHO and DWO");
  }
}

struct SquareWellLO {
  SwModel model = SwModel::AHO;
  Real g;
  int n_isw = 1;
  Real c_n, P, Q, u, a, h, E_LO;
  std::optional<Real> E2;
};

inline Real pi_real() { return boost::math::constants::pi<Real>(); }

inline SquareWellLO sw_lo(SwModel model, const Real& g, int n_isw) {
  if (n_isw < 1) throw DomainError("well index must be >= 1");
  if (model == SwModel::AHO && g < 0) throw DomainError("AHO requires g >= 0");
  if (model == SwModel::DWO && g <= 0) throw DomainError("DWO requires g > 0");
  SquareWellLO r;
  r.model = model;
  r.g = model == SwModel::SHO ? Real(0) : g;
  r.n_isw = n_isw;
  const Real k2 = mp::pow(n_isw * pi_real(), 2);
  r.c_n = 1 - 6 / k2;
  r.P = Real(4) / 3 * r.c_n / k2;
  const Real kq = Real(1) / 5 - 4 * r.c_n / k2;
  if (kq <= 0) throw DomainError("quartic projection is non-positive");
  r.Q = 16 * r.g / k2 * kq;
  switch (model) {
    case SwModel::SHO:
      r.u = mp::sqrt(r.P);
      r.E_LO = k2 / 8 * r.u + r.c_n / (6 * r.u);
      break;
    case SwModel::AHO:
      r.u = solve_depressed_cubic(r.P / 3, r.Q / 2);
      r.E_LO = 3 * k2 / 16 * r.u + r.c_n / (12 * r.u);
      break;
    case SwModel::DWO:
      r.u = solve_depressed_cubic(-r.P / 3, r.Q / 2);
      r.E_LO = 3 * k2 / 16 * r.u - r.c_n / (12 * r.u);
      break;
  }
  r.a = 1 / mp::sqrt(r.u);
  r.h = r.E_LO - k2 * r.u / 8;
  return r;
}

inline Real sw_cubic_residual(const SquareWellLO& r) {
  switch (r.model) {
    case SwModel::SHO: return r.u * r.u - r.P;
    case SwModel::AHO: return r.u * r.u * r.u - r.P * r.u - r.Q;
    case SwModel::DWO: return r.u * r.u * r.u + r.P * r.u - r.Q;
  }
  return Real(0);
}

inline Real sw_reference_energy(const SquareWellLO& lo, const Real& g) {
  if (lo.model != SwModel::DWO) throw DomainError("reference energy is defined for the double well");
  if (g <= 0) throw DomainError("reference energy requires g > 0");
  return lo.E_LO + 1 / (16 * g);
}

namespace detail {

// C_k(s) = int_{-1}^{1} y^k cos(sy) dy and S_k(s) = int_{-1}^{1} y^k sin(sy) dy.
inline Real trig_moment(int k, bool use_cos, const Real& s) {
  if ((k % 2 == 0) != use_cos) return Real(0);
  if (mp::abs(s) < 1) {
    Real term = use_cos ? Real(1) : s;  // s^{2j}/(2j)! or s^{2j+1}/(2j+1)!
    Real sum = 0;
    const int base = use_cos ? 0 : 1;
    for (int j = 0; j < 80; ++j) {
      Real add = term * 2 / (k + 2 * j + base + 1);
      sum += (j % 2 ? -add : add);
      if (mp::abs(add) < std::numeric_limits<Real>::epsilon() * mp::abs(sum) * Real(1e-3)) break;
      term *= s * s / ((2 * j + base + 1) * (2 * j + base + 2));
    }
    return sum;
  }
  const Real sn = mp::sin(s), cs = mp::cos(s);
  Real C = 2 * sn / s, S = 0;  // k = 0
  for (int q = 1; q <= k; ++q) {
    if (q % 2) S = -2 * cs / s + q / s * C;
    else C = 2 * sn / s - q / s * S;
  }
  return use_cos ? C : S;
}

// int_{-L}^{L} x^k cos(tx) or sin(tx) dx.
inline Real box_trig(int k, bool use_cos, const Real& t, const Real& L) {
  return mp::pow(L, k + 1) * trig_moment(k, use_cos, t * L);
}

}  // namespace detail

// int_{-L}^{L} phi_n(x; a_n) x^k phi_m(x; a_m) dx, with each trigonometric form continued past its own wall.
inline Real overlap_moment(int n, const Real& an, int m, const Real& am, int k, const Real& L) {
  if (n < 1 || m < 1) throw DomainError("well indices must be >= 1");
  if (k < 0 || k > 4) throw DomainError("moment power must be in 0..4");
  const Real al = n * pi_real() / (2 * an);
  const Real be = m * pi_real() / (2 * am);
  const bool cn = n % 2 == 1, cm = m % 2 == 1;
  const Real dm = al - be, sm = al + be;
  Real v;
  if (cn && cm) v = detail::box_trig(k, true, dm, L) + detail::box_trig(k, true, sm, L);
  else if (!cn && !cm) v = detail::box_trig(k, true, dm, L) - detail::box_trig(k, true, sm, L);
  else if (cn && !cm) v = detail::box_trig(k, false, sm, L) - detail::box_trig(k, false, dm, L);
  else v = detail::box_trig(k, false, sm, L) + detail::box_trig(k, false, dm, L);
  return v / (2 * mp::sqrt(an * am));
}

inline Real isw_moment(int n, int m, int k, const Real& a) {
  if (k < 0 || k > 4) throw DomainError("moment power must be in 0..4");
  if (a <= 0) throw DomainError("width must be positive");
  return overlap_moment(n, a, m, a, k, a);
}

// Which width the intermediate states use in the second-order sum.
enum class WidthRule { OwnWidth, SameWidth };

inline constexpr int kDefaultSwMaxLevel = 200;
inline constexpr double kSwTailTol = 1e-8;

struct SecondOrderResult {
  Real delta;
  Real total;
  Real tail_estimate;
  int terms = 0;
};

namespace detail {

inline Real sw_term(SwModel model, const SquareWellLO& ln, int m, WidthRule rule) {
  const Real sgn = model == SwModel::DWO ? Real(-1) : Real(1);
  const Real& a = ln.a;
  Real am, Em;
  if (rule == WidthRule::OwnWidth) {
    const SquareWellLO lm = sw_lo(model, ln.g, m);
    am = lm.a;
    Em = lm.E_LO;
  } else {
    am = a;
    Em = mp::pow(m * pi_real(), 2) / (8 * a * a) + ln.h;
  }
  const Real elem = sgn / 2 * overlap_moment(ln.n_isw, a, m, am, 2, a) +
                    ln.g * overlap_moment(ln.n_isw, a, m, am, 4, a) - ln.h * overlap_moment(ln.n_isw, a, m, am, 0, a);
  return elem * elem / (ln.E_LO - Em);
}

}  // namespace detail

// Sum over same-parity levels m != n up to m_max. The tail is extrapolated from the partial
// sums at m_max/4, m_max/2 and m_max assuming algebraic decay, since individual terms oscillate.
inline SecondOrderResult sw_second_order(SwModel model, const Real& g, int n_isw, int m_max = kDefaultSwMaxLevel,
                                         WidthRule rule = WidthRule::OwnWidth) {
  if (m_max < n_isw + 20) throw DomainError("m_max must be at least n + 20");
  const SquareWellLO ln = sw_lo(model, g, n_isw);
  SecondOrderResult res;
  res.delta = 0;
  Real s_quarter = 0, s_half = 0;
  for (int m = 1 + (n_isw + 1) % 2; m <= m_max; m += 2) {
    if (m != n_isw) {
      res.delta += detail::sw_term(model, ln, m, rule);
      ++res.terms;
    }
    if (m + 2 > m_max / 4 && m <= m_max / 4) s_quarter = res.delta;
    if (m + 2 > m_max / 2 && m <= m_max / 2) s_half = res.delta;
  }
  const Real d0 = mp::abs(s_half - s_quarter), d1 = mp::abs(res.delta - s_half);
  if (d1 == 0) {
    res.tail_estimate = 0;
  } else if (d0 > d1) {
    res.tail_estimate = d1 / (d0 / d1 - 1);
  } else {
    res.tail_estimate = d1 * m_max;
  }
  res.total = ln.E_LO + res.delta;
  if (res.tail_estimate > kSwTailTol)
    throw ConvergenceError("second-order sum tail " + to_string(res.tail_estimate, 3) + " exceeds tolerance at m_max " +
                           std::to_string(m_max));
  return res;
}

// Doubles m_max from the default until the tail bound holds.
inline SecondOrderResult sw_second_order_converged(SwModel model, const Real& g, int n_isw,
                                                   WidthRule rule = WidthRule::OwnWidth, int m_cap = 12800) {
  int m = std::max(kDefaultSwMaxLevel, n_isw + 20);
  for (;;) {
    try {
      return sw_second_order(model, g, n_isw, m, rule);
    } catch (const ConvergenceError&) {
      if (2 * m > m_cap) throw;
      m *= 2;
    }
  }
}

// Limit E_LO/E_exact at large n for the oscillator.
inline Real sho_asymptotic_ratio() { return pi_real() / (2 * mp::sqrt(Real(3))); }

}  // namespace ngas
