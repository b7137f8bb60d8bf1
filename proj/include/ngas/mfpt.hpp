#pragma once

#include "ngas/harmonic.hpp"
#include "ngas/surd.hpp"

#include <vector>

namespace ngas {

enum class Scheme { SFPT, MFPT };

struct PerturbationSeries {
  Scheme scheme = Scheme::MFPT;
  OscillatorSpec spec{Kind::SHO, 0, 0};
  Phase phase = Phase::Symmetric;
  NumericValue omega, h0, sigma;
  std::vector<NumericValue> coefficients;  // E_0 .. E_P
  int K = 2;
  bool exact = false;

  std::vector<Real> reals() const {
    std::vector<Real> out;
    out.reserve(coefficients.size());
    for (auto& c : coefficients) out.push_back(c.real());
    return out;
  }
};

namespace detail {

// Dense moment table X(j,i), rows indexed by perturbative order i.
template <class T>
class MomentTable {
 public:
  explicit MomentTable(int orders) : rows_(orders) {}
  void resize_row(int i, int jmax) { rows_[i].assign(jmax + 1, T(0)); }
  const T& at(int j, int i) const {
    if (i < 0 || j < 0) return zero_;
    if (j == 0) return i == 0 ? one_ : zero_;
    const auto& r = rows_[i];
    return j < static_cast<int>(r.size()) ? r[j] : zero_;
  }
  T& set(int j, int i) { return rows_[i][j]; }

 private:
  std::vector<std::vector<T>> rows_;
  T zero_{0};
  T one_{1};
};

// Hypervirial/Hellmann-Feynman recursion on even moments X(j,i) ~ <x^{2j}> for the split
// H0 = p^2/2 + w^2 x^2/2 + h0, H' = g x^{2K} + (s/2) x^2 - h0 with s*w^2 encoded by ew.
template <class T>
std::vector<T> even_recursion(int K, const T& w2, const T& h0, const T& g, const T& ew, const T& E0, int P) {
  MomentTable<T> X(P);
  std::vector<T> E{E0};
  const T quad = ew * w2 / T(2);
  for (int i = 0; i < P; ++i) {
    const int jmax = (K - 1) * (P - i) + 1;
    X.resize_row(i, jmax);
    for (int j = 1; j <= jmax; ++j) {
      const T a = -h0 / w2 * T(2 * j - 1) / T(j);
      const T b = T(2 * j - 1) / (w2 * T(j));
      const T c = T((j - 1) * (4 * (j - 1) * (j - 1) - 1)) / (T(4 * j) * w2);
      const T f = g / w2 * T(2 * j - 1 + K) / T(j);
      T conv(0);
      for (int m = 0; m <= i; ++m) conv += E[m] * X.at(j - 1, i - m);
      X.set(j, i) = a * X.at(j - 1, i) + b * conv + c * X.at(j - 2, i) - a * X.at(j - 1, i - 1) +
                    ew * X.at(j, i - 1) - f * X.at(j + K - 1, i - 1);
    }
    const int p = i + 1;
    T v = g * X.at(K, p - 1) - quad * X.at(1, p - 1);
    if (p == 1) v = v - h0;
    E.push_back(v / T(p));
  }
  return E;
}

// Same construction on all moments <x^j> about the shifted minimum sigma.
template <class T>
std::vector<T> ssb_recursion(const T& w2, const T& sigma, const T& C, const T& g, const T& E0, int P) {
  MomentTable<T> X(P);
  std::vector<T> E{E0};
  const T ew = (w2 + T(1)) / w2;
  for (int i = 0; i < P; ++i) {
    const int jmax = 2 * (P + 1 - i);
    X.resize_row(i, jmax);
    for (int j = 1; j <= jmax; ++j) {
      const T a = sigma * T(2 * j - 1) / T(j);
      const T b = T(2 * (j - 1)) / (w2 * T(j));
      const T bt = C * b;
      const T c = T((j - 1) * (j - 2) * (j - 3)) / (T(4 * j) * w2);
      const T f = T(2) * g / w2 * T(j + 1) / T(j);
      T conv(0);
      for (int m = 0; m <= i; ++m) conv += E[m] * X.at(j - 2, i - m);
      X.set(j, i) = a * X.at(j - 1, i) + b * conv - bt * X.at(j - 2, i) + c * X.at(j - 4, i) -
                    a * X.at(j - 1, i - 1) + bt * X.at(j - 2, i - 1) + ew * X.at(j, i - 1) -
                    f * X.at(j + 2, i - 1);
    }
    const int p = i + 1;
    T v = g * X.at(4, p - 1) - (w2 + T(1)) / T(2) * X.at(2, p - 1) + w2 * sigma * X.at(1, p - 1);
    if (p == 1) v = v - C;
    E.push_back(v / T(p));
  }
  return E;
}

inline void check_order(int P) {
  if (P < 1) throw DomainError("perturbative order must be >= 1");
}

}  // namespace detail

inline constexpr int kDefaultMaxOrder = 200;

// Unperturbed oscillator moments Y(j) = <x^{2j}> at unit frequency.
inline std::vector<Rational> sho_moments(int j_max, const SpectralIndex& s) {
  if (j_max < 0) throw DomainError("j_max must be >= 0");
  std::vector<Rational> Y{Rational(1)};
  for (int j = 0; j < j_max; ++j) {
    Rational next = Rational(2 * j + 1, j + 1) * s.xi * Y[j];
    if (j >= 1) next += Rational(j * (4 * j * j - 1), 4 * (j + 1)) * Y[j - 1];
    Y.push_back(next);
  }
  return Y;
}

// Coefficients of the ordinary power series in lambda for V = x^2/2 + lambda x^{2K}.
inline PerturbationSeries sfpt_coefficients(int K, long n, int P) {
  if (K < 2 || K > 4) throw DomainError("SFPT supports K in {2,3,4}");
  detail::check_order(P);
  SpectralIndex s = xi_of(n);
  Kind kind = K == 2 ? Kind::QAHO : (K == 3 ? Kind::SAHO : Kind::OAHO);
  auto E = detail::even_recursion<Rational>(K, 1, 0, 1, 0, s.xi, P);
  PerturbationSeries ps;
  ps.scheme = Scheme::SFPT;
  ps.spec = OscillatorSpec(kind, 0, n);
  ps.omega = Rational(1);
  ps.h0 = Rational(0);
  ps.sigma = Rational(0);
  ps.K = K;
  ps.exact = true;
  for (auto& e : E) ps.coefficients.emplace_back(e);
  return ps;
}

enum class EvenModel { AHO, DWO_SR };

namespace detail {

inline PerturbationSeries even_series(int K, EvenModel model, const OscillatorSpec& spec, const LOResult& lo, int P,
                                      bool force_real) {
  PerturbationSeries ps;
  ps.scheme = Scheme::MFPT;
  ps.spec = spec;
  ps.phase = lo.phase;
  ps.K = K;
  const Kind kind = spec.kind;
  SpectralIndex s = spec.index();
  if (lo.omega_exact && !force_real) {
    const Rational& w = *lo.omega_exact;
    auto en = lo_energies<Rational>(kind, lo.phase, spec.g, s.xi, w);
    Rational w2 = w * w;
    Rational ew = model == EvenModel::AHO ? (w2 - 1) / w2 : (w2 + 1) / w2;
    auto E = even_recursion<Rational>(K, w2, en.h0, spec.g, ew, en.E0, P);
    ps.exact = true;
    ps.omega = w;
    ps.h0 = en.h0;
    ps.sigma = Rational(0);
    for (auto& e : E) ps.coefficients.emplace_back(e);
  } else {
    const Real& w = lo.omega;
    Real w2 = w * w;
    Real ew = model == EvenModel::AHO ? (w2 - 1) / w2 : (w2 + 1) / w2;
    auto E = even_recursion<Real>(K, w2, lo.h0, spec.g_real(), ew, lo.E0, P);
    ps.omega = lo.omega;
    ps.h0 = lo.h0;
    ps.sigma = Real(0);
    for (auto& e : E) ps.coefficients.emplace_back(e);
  }
  return ps;
}

inline PerturbationSeries ssb_series(const OscillatorSpec& spec, const LOResult& lo, int P, bool force_real) {
  PerturbationSeries ps;
  ps.scheme = Scheme::MFPT;
  ps.spec = spec;
  ps.phase = Phase::SSB;
  ps.K = 2;
  SpectralIndex s = spec.index();
  if (lo.omega_exact && !force_real) {
    const Rational& w = *lo.omega_exact;
    auto en = lo_energies<Rational>(Kind::QDWO, Phase::SSB, spec.g, s.xi, w);
    Rational w2 = w * w;
    QuadSurd sigma = QuadSurd::root(en.sigma2);
    QuadSurd C(en.h0 + w2 * en.sigma2 / 2);
    auto E = ssb_recursion<QuadSurd>(QuadSurd(w2), sigma, C, QuadSurd(spec.g), QuadSurd(en.E0), P);
    ps.exact = true;
    ps.omega = w;
    ps.h0 = en.h0;
    ps.sigma = lo.sigma;
    for (auto& e : E) {
      if (e.surd_part() == 0) {
        ps.coefficients.emplace_back(e.rational_part());
      } else {
        ps.exact = false;
        ps.coefficients.emplace_back(e.value());
      }
    }
  } else {
    Real w2 = lo.omega * lo.omega;
    Real C = lo.h0 + w2 * lo.sigma2 / 2;
    auto E = ssb_recursion<Real>(w2, lo.sigma, C, spec.g_real(), lo.E0, P);
    ps.omega = lo.omega;
    ps.h0 = lo.h0;
    ps.sigma = lo.sigma;
    for (auto& e : E) ps.coefficients.emplace_back(e);
  }
  return ps;
}

}  // namespace detail

// Coefficients are exact whenever the gap root is rational; otherwise high-precision reals.
inline PerturbationSeries mfpt_coefficients_even(int K, EvenModel model, const Rational& g, long n, int P,
                                                 bool force_real = false) {
  detail::check_order(P);
  if (K != 2 && K != 3) throw DomainError("even MFPT recursion supports K in {2,3}");
  if (model == EvenModel::DWO_SR && K != 2) throw DomainError("double-well recursion is quartic only");
  Kind kind = model == EvenModel::DWO_SR ? Kind::QDWO : (K == 2 ? Kind::QAHO : Kind::SAHO);
  OscillatorSpec spec(kind, g, n);
  auto rep = lo_spectrum(spec);
  if (model == EvenModel::DWO_SR && rep.lo.phase != Phase::SR)
    throw PhaseError("coupling lies in the broken-symmetry phase; use the SSB recursion");
  return detail::even_series(K, model, spec, rep.lo, P, force_real);
}

inline PerturbationSeries mfpt_coefficients_ssb(const Rational& g, long n, int P, bool force_real = false) {
  detail::check_order(P);
  OscillatorSpec spec(Kind::QDWO, g, n);
  auto rep = lo_spectrum(spec);
  if (rep.lo.phase != Phase::SSB) throw PhaseError("coupling is not in the broken-symmetry phase");
  return detail::ssb_series(spec, rep.lo, P, force_real);
}

// Dispatch on model and phase.
inline PerturbationSeries mfpt_coefficients(const OscillatorSpec& spec, int P, bool force_real = false) {
  switch (spec.kind) {
    case Kind::QAHO: return mfpt_coefficients_even(2, EvenModel::AHO, spec.g, spec.n, P, force_real);
    case Kind::SAHO: return mfpt_coefficients_even(3, EvenModel::AHO, spec.g, spec.n, P, force_real);
    case Kind::QDWO: {
      detail::check_order(P);
      auto rep = lo_spectrum(spec);
      if (rep.lo.phase == Phase::SSB) return detail::ssb_series(spec, rep.lo, P, force_real);
      return detail::even_series(2, EvenModel::DWO_SR, spec, rep.lo, P, force_real);
    }
    default: throw DomainError("MFPT recursion is available for QAHO, SAHO and QDWO");
  }
}

}  // namespace ngas
