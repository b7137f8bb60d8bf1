#pragma once

#include "ngas/errors.hpp"
#include "ngas/mfpt.hpp"
#include "ngas/numeric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <vector>

namespace ngas {

struct TruncationResult {
  int N0 = 2;
  Real E_MOT;
  bool growing_from_start = false;
};

// Truncation at the first term of least magnitude; E_1 vanishes in MFPT so the search starts at k = 2.
inline TruncationResult optimal_truncation(const std::vector<Real>& E) {
  if (E.size() < 5) throw DomainError("optimal truncation needs at least three terms beyond E_0 and E_1");
  TruncationResult r;
  const int last = static_cast<int>(E.size()) - 1;
  r.N0 = last;
  for (int k = 2; k < last; ++k) {
    if (mp::abs(E[k + 1]) >= mp::abs(E[k])) {
      r.N0 = k;
      break;
    }
  }
  if (r.N0 == last) throw ConvergenceError("no term of least magnitude within the available order");
  r.growing_from_start = r.N0 == 2;
  r.E_MOT = 0;
  for (int k = 0; k <= r.N0; ++k) r.E_MOT += E[k];
  return r;
}

inline TruncationResult optimal_truncation(const PerturbationSeries& s) { return optimal_truncation(s.reals()); }

inline std::vector<Real> borel_transform(const std::vector<Real>& E, const Real& alpha) {
  std::vector<Real> b(E.size());
  for (std::size_t j = 0; j < E.size(); ++j) b[j] = E[j] / boost::math::tgamma(alpha * j + 1);
  return b;
}

struct SingularityEstimate {
  Real r_c;
  Real p_exp;
  Real r_spread;
  Real p_spread;
};

// Radius and exponent of the leading Borel-plane singularity from consecutive b_j, averaged over
// the last `window` admissible j.
inline SingularityEstimate estimate_singularity(const std::vector<Real>& b, int window) {
  if (window < 5) throw DomainError("window must be >= 5");
  const int L = static_cast<int>(b.size());
  if (L < window + 2) throw DomainError("not enough coefficients for the requested window");
  std::vector<Real> rs, ps;
  for (int j = L - 1 - window; j <= L - 2; ++j) {
    if (j < 1) continue;
    const Real D = j * b[j] * b[j] - (j + 1) * b[j + 1] * b[j - 1];
    if (D == 0) continue;
    rs.push_back(b[j] * b[j - 1] / D);
    ps.push_back((Real(j) * j * b[j] * b[j] - (Real(j) * j - 1) * b[j - 1] * b[j + 1]) / D);
  }
  if (rs.empty()) throw ConvergenceError("singularity estimator denominator vanished at every sampled j");
  SingularityEstimate e;
  e.r_c = 0;
  e.p_exp = 0;
  for (auto& r : rs) e.r_c += r;
  for (auto& p : ps) e.p_exp += p;
  e.r_c /= rs.size();
  e.p_exp /= ps.size();
  auto [rmin, rmax] = std::minmax_element(rs.begin(), rs.end());
  auto [pmin, pmax] = std::minmax_element(ps.begin(), ps.end());
  e.r_spread = *rmax - *rmin;
  e.p_spread = *pmax - *pmin;
  return e;
}

inline Real conformal_map(const Real& u, const Real& s) {
  if (s <= 0) throw DomainError("s must be positive");
  if (1 + s * u <= 0) throw DomainError("u lies on the branch cut");
  const Real r = mp::sqrt(1 + s * u);
  return (r - 1) / (r + 1);
}

inline Real inverse_map(const Real& z, const Real& s) {
  if (s <= 0) throw DomainError("s must be positive");
  if (mp::abs(z) >= 1) throw DomainError("|z| must be < 1");
  return 4 / s * z / ((1 - z) * (1 - z));
}

// Expansion of B(u(z)) in powers of z for u = rho z/(1-z)^2. rho = 1 gives the bare combinatorial
// weights; the physical integrand needs rho = 4 r_c.
inline std::vector<Real> reexpand_borel(const std::vector<Real>& b, int N, const Real& rho = Real(1)) {
  if (N < 1 || N >= static_cast<int>(b.size())) throw DomainError("N must satisfy 1 <= N < len(b)");
  std::vector<Real> B(N + 1, Real(0));
  for (int k = 1; k <= N; ++k) {
    Real acc = 0;
    Real rn = 1;
    for (int n = 1; n <= k; ++n) {
      rn *= rho;
      // (n+k-1)! / ((k-n)! (2n-1)!) = binomial(n+k-1, k-n)
      acc += b[n] * rn * boost::math::binomial_coefficient<Real>(n + k - 1, k - n);
    }
    B[k] = acc;
  }
  return B;
}

inline constexpr double kDefaultBorelEps = 0.001;
inline constexpr double kQuadAbsTol = 1e-9;

struct BorelAnalysis {
  Real alpha;
  Real r_c;
  Real p_exp;
  std::vector<Real> b;
  std::vector<Real> B;
  int N_c = 0;
  Real epsilon;
  Real delta_E;
  Real E_tot;
  Real quad_error;
};

namespace detail {

template <class F>
Real integrate_panels(F f, const std::vector<Real>& cuts, Real* err_out) {
  using boost::math::quadrature::gauss_kronrod;
  Real total = 0, err = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Real e = 0;
    total += gauss_kronrod<Real, 31>::integrate(f, cuts[i], cuts[i + 1], 20, Real(1e-25), &e);
    err += e;
  }
  if (err_out) *err_out = err;
  return total;
}

}  // namespace detail

// Laplace-Borel integral of the conformally continued transform over z in [0, 1 - eps].
inline BorelAnalysis borel_sum(const std::vector<Real>& E, const Real& alpha, const Real& r_c, int N_c,
                               const Real& epsilon = Real(kDefaultBorelEps)) {
  if (alpha <= 0) throw DomainError("alpha must be positive");
  if (r_c <= 0) throw DomainError("r_c must be positive");
  if (epsilon <= 0 || epsilon >= 1) throw DomainError("epsilon must lie in (0,1)");
  if (N_c < 1 || N_c >= static_cast<int>(E.size())) throw DomainError("series too short for N_c");
  BorelAnalysis r;
  r.alpha = alpha;
  r.r_c = r_c;
  r.N_c = N_c;
  r.epsilon = epsilon;
  r.b = borel_transform(E, alpha);
  const Real rho = 4 * r_c;
  const Real gam = 1 / alpha;
  r.B = reexpand_borel(r.b, N_c, rho);
  auto f = [&](const Real& z) -> Real {
    const Real om = 1 - z;
    const Real u = rho * z / (om * om);
    Real poly = 0;
    for (int k = N_c; k >= 1; --k) poly = (poly + r.B[k]) * z;
    const Real ug = gam == 1 ? u : mp::pow(u, gam);
    const Real w = gam == 1 ? Real(1) : (u == 0 ? Real(0) : mp::pow(u, gam - 1));
    return gam * rho * (1 + z) / (om * om * om) * w * mp::exp(-ug) * poly;
  };
  const Real top = 1 - epsilon;
  std::vector<Real> cuts{Real(0)};
  for (Real c : {Real(1) / 2, Real(9) / 10, Real(99) / 100, Real(999) / 1000, Real(9999) / 10000})
    if (c < top) cuts.push_back(c);
  cuts.push_back(top);
  r.delta_E = detail::integrate_panels(f, cuts, &r.quad_error);
  if (!(r.quad_error <= kQuadAbsTol)) throw ConvergenceError("Borel quadrature error " + to_string(r.quad_error, 3));
  r.E_tot = E[0] + r.delta_E;
  r.p_exp = Real(0);
  return r;
}

inline BorelAnalysis borel_sum(const PerturbationSeries& s, const Real& alpha, const Real& r_c, int N_c,
                               const Real& epsilon = Real(kDefaultBorelEps)) {
  return borel_sum(s.reals(), alpha, r_c, N_c, epsilon);
}

inline constexpr int kDefaultSingularityWindow = 5;

// Borel sum with r_c from the coefficients themselves.
inline BorelAnalysis borel_sum_estimated(const std::vector<Real>& E, const Real& alpha, int N_c,
                                         int window = kDefaultSingularityWindow,
                                         const Real& epsilon = Real(kDefaultBorelEps)) {
  auto est = estimate_singularity(borel_transform(E, alpha), window);
  auto r = borel_sum(E, alpha, est.r_c, N_c, epsilon);
  r.p_exp = est.p_exp;
  return r;
}

}  // namespace ngas
