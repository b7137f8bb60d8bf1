#pragma once

#include "ngas/errors.hpp"
#include "ngas/numeric.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/tools/roots.hpp>

#include <optional>

namespace ngas {

struct Phi4Params {
  Real m_R = 1;
  std::optional<Real> g_R;
  Real eta = 0;
  Real sigma = 0;

  static Phi4Params from_eta(Real m, Real eta, Real sigma = 0) {
    if (m <= 0) throw DomainError("m_R must be positive");
    return {m, std::nullopt, eta, sigma};
  }
  static Phi4Params from_coupling(Real m, Real gR, Real sigma = 0) {
    if (m <= 0) throw DomainError("m_R must be positive");
    if (gR == 0) throw DomainError("g_R must be nonzero");
    const Real pi = boost::math::constants::pi<Real>();
    return {m, gR, -4 * pi * pi / gR, sigma};
  }
};

struct GapSolution {
  Real t;
  bool converged = false;
  bool tangent = false;
  Real residual;
};

namespace detail {

inline Real pi2_16() { return 16 * mp::pow(boost::math::constants::pi<Real>(), 2); }

inline Real phi4_residual(const Real& t, const Real& eta, const Real& s) {
  return (1 - eta) * (t - 1) - s - t * mp::log(t);
}

}  // namespace detail

inline Real sigma_domain(const Phi4Params& p) {
  return p.m_R * p.m_R / detail::pi2_16() * (mp::exp(-p.eta) + p.eta - 1);
}

inline constexpr double kPhi4GapTol = 1e-12;

// Root of (1-eta)(t-1) - 16 pi^2 sigma^2/m_R^2 = t ln t on the branch through t(0) = 1, which lies
// between 1 and the stationary point e^{-eta}.
inline GapSolution solve_gap_t(const Phi4Params& p) {
  const Real s = detail::pi2_16() * p.sigma * p.sigma / (p.m_R * p.m_R);
  GapSolution sol;
  if (s == 0) {
    sol.t = 1;
    sol.converged = true;
    sol.residual = 0;
    return sol;
  }
  const Real tstar = mp::exp(-p.eta);
  const Real peak = detail::phi4_residual(tstar, p.eta, s);
  const Real scale = std::max(Real(1), s);
  if (peak < -kPhi4GapTol * scale) throw DomainError("sigma^2 exceeds the admissible bound; no gap solution");
  if (peak <= kPhi4GapTol * scale) {
    sol.t = tstar;
    sol.tangent = true;
  } else {
    Real lo = std::min(tstar, Real(1)), hi = std::max(tstar, Real(1));
    auto f = [&](const Real& t) { return detail::phi4_residual(t, p.eta, s); };
    boost::uintmax_t iters = 200;
    auto tol = [](const Real& a, const Real& b) { return mp::abs(a - b) <= Real(1e-45) * mp::abs(a); };
    auto br = boost::math::tools::toms748_solve(f, lo, hi, f(lo), f(hi), tol, iters);
    sol.t = (br.first + br.second) / 2;
  }
  sol.residual = detail::phi4_residual(sol.t, p.eta, s);
  sol.converged = mp::abs(sol.residual) < kPhi4GapTol;
  if (!sol.converged && !sol.tangent) throw ConvergenceError("gap equation did not converge");
  return sol;
}

// U_0(sigma) - U_min with the divergent constant dropped.
inline Real effective_potential(const Phi4Params& p) {
  const Real t = solve_gap_t(p).t;
  const Real pi2 = mp::pow(boost::math::constants::pi<Real>(), 2);
  const Real m2 = p.m_R * p.m_R;
  return t * m2 * p.sigma * p.sigma / 4 - m2 * m2 / (128 * pi2) * (t - 1) * (t - 1) -
         m2 * m2 / (64 * pi2) * (t - 1) * p.eta;
}

inline Real condensate_ratio(const Real& k, const Real& m_R) {
  if (m_R <= 0) throw DomainError("m_R must be positive");
  if (k < 0) throw DomainError("k must be non-negative");
  return 1 / mp::sqrt(1 + k * k / (m_R * m_R));
}

}  // namespace ngas
