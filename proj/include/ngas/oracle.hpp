#pragma once

#include "ngas/errors.hpp"
#include "ngas/harmonic.hpp"
#include "ngas/mfpt.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace ngas {

struct OracleConfig {
  int basis_size = 400;
  double basis_frequency = 0;  // <= 0 selects the LO gap frequency
  double convergence_tol = 1e-10;
  int max_doublings = 2;
};

namespace detail {

using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// Lowest eigenvalues of H = p^2/2 + c2 x^2 + g x^{2K} in a basis of M oscillator states with frequency W.
// Parity blocks are diagonalised separately; the potential is even so odd/even never mix.
inline std::vector<long double> oscillator_eigenvalues(int M, long double W, long double c2, long double g, int K) {
  const int ext = M + 2 * K + 2;
  // Column j of x^k restricted to the first M rows, from repeated tridiagonal products.
  const long double sx = 1.0L / std::sqrt(2.0L * W);
  auto apply_x = [&](const std::vector<long double>& v) {
    std::vector<long double> out(ext, 0.0L);
    for (int i = 0; i < ext; ++i) {
      if (v[i] == 0) continue;
      if (i + 1 < ext) out[i + 1] += std::sqrt((long double)(i + 1)) * sx * v[i];
      if (i >= 1) out[i - 1] += std::sqrt((long double)i) * sx * v[i];
    }
    return out;
  };
  std::vector<long double> evals;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<int> idx;
    for (int i = parity; i < M; i += 2) idx.push_back(i);
    const int n = static_cast<int>(idx.size());
    LMatrix H = LMatrix::Zero(n, n);
    std::vector<int> pos(M, -1);
    for (int a = 0; a < n; ++a) pos[idx[a]] = a;
    for (int a = 0; a < n; ++a) {
      const int j = idx[a];
      std::vector<long double> v(ext, 0.0L);
      v[j] = 1;
      std::vector<long double> x2, x2k;
      std::vector<long double> cur = v;
      for (int p = 1; p <= 2 * K; ++p) {
        cur = apply_x(cur);
        if (p == 2) x2 = cur;
      }
      x2k = cur;
      for (int i = std::max(0, j - 2 * K); i <= std::min(M - 1, j + 2 * K); ++i) {
        if (pos[i] < 0) continue;
        // p^2/2 = W/2 (2N+1)/2 - W x^2/2 ... written through x^2: p^2 = W^2 (2N+1)/W - W^2 x^2.
        long double kin = (i == j ? W * (2.0L * j + 1) / 2.0L : 0.0L) - W * W * x2[i] / 2.0L;
        H(pos[i], a) = kin + c2 * x2[i] + g * x2k[i];
      }
    }
    Eigen::SelfAdjointEigenSolver<LMatrix> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver failed");
    for (int a = 0; a < n; ++a) evals.push_back(es.eigenvalues()(a));
  }
  std::sort(evals.begin(), evals.end());
  return evals;
}

inline void potential_terms(Kind k, const Real& g, long double& c2, long double& gg, int& K) {
  gg = static_cast<long double>(g);
  c2 = 0.5L;
  K = anharmonic_K(k);
  switch (k) {
    case Kind::QDWO: c2 = -0.5L; break;
    case Kind::SHO: gg = 0; K = 2; break;
    default: break;
  }
}

}  // namespace detail

// Lowest `levels` eigenvalues of the full Hamiltonian (no reference shift), converged by basis doubling.
inline std::vector<double> diagonalize(const OscillatorSpec& spec, const OracleConfig& cfg, int levels) {
  if (cfg.basis_size < 50) throw DomainError("basis_size must be >= 50");
  if (levels < 1 || levels > cfg.basis_size / 4) throw DomainError("levels must be in [1, basis_size/4]");
  long double W = cfg.basis_frequency;
  if (W <= 0) {
    W = 1;
    try {
      W = static_cast<long double>(lo_spectrum(spec).lo.omega);
    } catch (const DomainError&) {
    }
  }
  long double c2, g;
  int K;
  detail::potential_terms(spec.kind, spec.g_real(), c2, g, K);
  int M = cfg.basis_size;
  auto prev = detail::oscillator_eigenvalues(M, W, c2, g, K);
  // Zero doublings means a single basis with no convergence test.
  if (cfg.max_doublings <= 0) return std::vector<double>(prev.begin(), prev.begin() + levels);
  for (int d = 0; d < cfg.max_doublings; ++d) {
    M *= 2;
    auto next = detail::oscillator_eigenvalues(M, W, c2, g, K);
    long double worst = 0;
    for (int l = 0; l < levels; ++l) worst = std::max(worst, std::fabs(next[l] - prev[l]));
    prev = std::move(next);
    if (worst < cfg.convergence_tol) {
      return std::vector<double>(prev.begin(), prev.begin() + levels);
    }
  }
  throw ConvergenceError("oracle eigenvalues not converged after basis doubling");
}

inline double oracle_energy(const OscillatorSpec& spec, const OracleConfig& cfg = {}) {
  return diagonalize(spec, cfg, static_cast<int>(spec.n) + 1).back();
}

// Second-order standard perturbation coefficient for lambda x^{2K}, summed exactly over oscillator
// states. Uses the unnormalised basis e_j (a^+ e_j = e_{j+1}, a e_j = j e_{j-1}), where
// <m|x^{2K}|n>^2 = c_m^2 m!/(n! 2^{2K}).
inline Rational second_order_sum_oracle(int K, long n) {
  if (K != 2 && K != 3) throw DomainError("oracle supports K in {2,3}");
  if (n < 0) throw DomainError("level index must be non-negative");
  const long top = n + 2 * K + 1;
  std::vector<Integer> c(top + 1, Integer(0));
  c[n] = 1;
  for (int step = 0; step < 2 * K; ++step) {
    std::vector<Integer> out(top + 1, Integer(0));
    for (long j = 0; j <= top; ++j) {
      if (c[j] == 0) continue;
      if (j + 1 <= top) out[j + 1] += c[j];
      if (j >= 1) out[j - 1] += Integer(j) * c[j];
    }
    c = std::move(out);
  }
  auto fact = [](long k) {
    Integer f = 1;
    for (long i = 2; i <= k; ++i) f *= i;
    return f;
  };
  const Integer pow2 = Integer(1) << (2 * K);
  Rational E2 = 0;
  for (long m = 0; m <= top; ++m) {
    if (m == n || c[m] == 0) continue;
    Rational elem2(c[m] * c[m] * fact(m), fact(n) * pow2);
    E2 += elem2 / Rational(n - m);
  }
  return E2;
}

}  // namespace ngas
