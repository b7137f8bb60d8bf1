#pragma once

#include "ngas/gap.hpp"
#include "ngas/model.hpp"

namespace ngas {

enum class FormulaId { QahoCubic, QdwoSR, QdwoSSB, SahoQuadratic, OahoQuintic, ShoExact };

inline std::string_view formula_name(FormulaId f) {
  switch (f) {
    case FormulaId::QahoCubic: return "qaho-cubic";
    case FormulaId::QdwoSR: return "qdwo-sr";
    case FormulaId::QdwoSSB: return "qdwo-ssb";
    case FormulaId::SahoQuadratic: return "saho-quadratic";
    case FormulaId::OahoQuintic: return "oaho-quintic";
    case FormulaId::ShoExact: return "sho";
  }
  return "?";
}

template <class T>
struct LOEnergies {
  T E0;
  T h0;
  T sigma2;
};

// LO energy, shift and VEV^2 written generically so the same expressions serve both the
// high-precision path and exact rational gap roots.
template <class T>
LOEnergies<T> lo_energies(Kind kind, Phase phase, const T& g, const T& xi, const T& w) {
  T zero(0);
  switch (kind) {
    case Kind::QAHO: {
      T E0 = xi / T(4) * (T(3) * w + T(1) / w);
      return {E0, xi / T(4) * (T(1) / w - w), zero};
    }
    case Kind::QDWO:
      if (phase == Phase::SSB) {
        T E0 = T(-1) / (T(16) * g) + xi / T(4) * (T(3) * w + T(2) / w);
        T s2 = (T(1) - T(12) * g * xi / w) / (T(4) * g);
        return {E0, E0 - w * xi, s2};
      } else {
        T E0 = xi / T(4) * (T(3) * w - T(1) / w);
        return {E0, E0 - w * xi, zero};
      }
    case Kind::SAHO: {
      T E0 = xi / T(3) * (T(2) * w + T(1) / w);
      return {E0, xi / T(3) * (T(1) / w - w), zero};
    }
    case Kind::OAHO: {
      T E0 = xi / T(8) * (T(5) * w + T(3) / w);
      return {E0, E0 - w * xi, zero};
    }
    case Kind::SHO: return {xi, zero, zero};
  }
  return {zero, zero, zero};
}

// Coefficients (ascending powers) of the gap polynomial in w.
inline std::vector<Rational> gap_polynomial(Kind kind, Phase phase, const Rational& g, const SpectralIndex& s) {
  const Rational& xi = s.xi;
  switch (kind) {
    case Kind::QAHO: return {-6 * g * f_xi(s), -1, 0, 1};
    case Kind::QDWO:
      if (phase == Phase::SSB) return {6 * g * (5 * xi - Rational(1) / (4 * xi)), -2, 0, 1};
      return {-6 * g * f_xi(s), 1, 0, 1};
    case Kind::SAHO: return {-Rational(15, 4) * g * (5 + 4 * xi * xi), 0, -1, 0, 1};
    case Kind::OAHO: return {-35 * g * (xi * xi * xi + Rational(7, 2) * xi + Rational(9) / (16 * xi)), 0, 0, -1, 0, 1};
    case Kind::SHO: return {-1, 1};
  }
  return {};
}

struct HarmonicLOReport {
  OscillatorSpec spec;
  LOResult lo;
  FormulaId formula_id;
};

inline Phase qdwo_phase(const Real& g, const SpectralIndex& s, bool* boundary = nullptr) {
  Real gc = qdwo_critical_coupling(s);
  bool at = mp::abs(g - gc) <= kPhaseBoundaryTol * gc;
  if (boundary) *boundary = at;
  if (at || g > gc) return Phase::SR;
  return Phase::SSB;
}

inline HarmonicLOReport lo_spectrum(const OscillatorSpec& spec) {
  SpectralIndex s = spec.index();
  Real g = spec.g_real();
  LOResult lo;
  FormulaId fid{};
  switch (spec.kind) {
    case Kind::QAHO:
      lo.omega = qaho_omega(g, s);
      lo.gap_residual = qaho_gap_residual(lo.omega, g, s);
      fid = FormulaId::QahoCubic;
      break;
    case Kind::QDWO:
      lo.phase = qdwo_phase(g, s, &lo.phase_boundary);
      if (lo.phase == Phase::SR) {
        lo.omega = qdwo_sr_omega(g, s);
        lo.gap_residual = qdwo_sr_gap_residual(lo.omega, g, s);
        fid = FormulaId::QdwoSR;
      } else {
        lo.omega = qdwo_ssb_omega(g, s);
        lo.gap_residual = qdwo_ssb_gap_residual(lo.omega, g, s);
        fid = FormulaId::QdwoSSB;
      }
      break;
    case Kind::SAHO:
      lo.omega = saho_omega(g, s);
      lo.gap_residual = saho_gap_residual(lo.omega, g, s);
      fid = FormulaId::SahoQuadratic;
      break;
    case Kind::OAHO:
      lo.omega = oaho_omega(g, s);
      lo.gap_residual = oaho_gap_residual(lo.omega, g, s);
      fid = FormulaId::OahoQuintic;
      break;
    case Kind::SHO:
      lo.omega = 1;
      lo.gap_residual = 0;
      fid = FormulaId::ShoExact;
      break;
  }
  auto en = lo_energies<Real>(spec.kind, lo.phase, g, to_real(s.xi), lo.omega);
  lo.E0 = en.E0;
  lo.h0 = en.h0;
  lo.sigma2 = en.sigma2;
  lo.sigma = lo.phase == Phase::SSB ? mp::sqrt(en.sigma2) : Real(0);

  if (auto cand = nearby_rational(lo.omega)) {
    if (eval_poly(gap_polynomial(spec.kind, lo.phase, spec.g, s), *cand) == 0) lo.omega_exact = *cand;
  }
  return {spec, lo, fid};
}

}  // namespace ngas
