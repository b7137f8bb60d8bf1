#pragma once

#include "ngas/errors.hpp"
#include "ngas/numeric.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace ngas {

enum class Kind { QAHO, QDWO, SAHO, OAHO, SHO };

inline std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::QAHO: return "QAHO";
    case Kind::QDWO: return "QDWO";
    case Kind::SAHO: return "SAHO";
    case Kind::OAHO: return "OAHO";
    case Kind::SHO: return "SHO";
  }
  return "?";
}

inline Kind parse_kind(std::string_view name) {
  std::string s(name);
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "QAHO" || s == "AHO") return Kind::QAHO;
  if (s == "QDWO" || s == "DWO") return Kind::QDWO;
  if (s == "SAHO") return Kind::SAHO;
  if (s == "OAHO") return Kind::OAHO;
  if (s == "SHO") return Kind::SHO;
  throw DomainError("unknown model: " + std::string(name));
}

// Half-power of the anharmonic term: x^{2K}.
inline int anharmonic_K(Kind k) {
  switch (k) {
    case Kind::QAHO:
    case Kind::QDWO: return 2;
    case Kind::SAHO: return 3;
    case Kind::OAHO: return 4;
    case Kind::SHO: return 1;
  }
  return 1;
}

struct SpectralIndex {
  Rational xi;
};

inline SpectralIndex xi_of(long n) {
  if (n < 0) throw DomainError("level index must be non-negative");
  return {Rational(Integer(2 * n + 1), Integer(2))};
}

inline Rational f_xi(const SpectralIndex& s) {
  return s.xi + Rational(1) / (Rational(4) * s.xi);
}

struct OscillatorSpec {
  Kind kind;
  Rational g;
  long n;

  OscillatorSpec(Kind k, Rational coupling, long level) : kind(k), g(std::move(coupling)), n(level) {
    if (n < 0) throw DomainError("level index must be non-negative");
    if (kind == Kind::SHO) g = 0;
    if (g < 0) throw DomainError("coupling must be non-negative");
    if (kind == Kind::QDWO && g <= 0) throw DomainError("double well requires g > 0");
  }

  SpectralIndex index() const { return xi_of(n); }
  Real g_real() const { return to_real(g); }
};

enum class Phase { Symmetric, SR, SSB };

inline std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::Symmetric: return "symmetric";
    case Phase::SR: return "SR";
    case Phase::SSB: return "SSB";
  }
  return "?";
}

struct LOResult {
  Real omega;
  Real h0;
  Real sigma;
  Real sigma2;
  Phase phase = Phase::Symmetric;
  Real E0;
  Real gap_residual;
  bool phase_boundary = false;
  // Set when the gap root is rational, which enables exact perturbation coefficients.
  std::optional<Rational> omega_exact;
};

// Double-well energies are quoted relative to the bottom of the well.
inline Real reference_shift(const OscillatorSpec& s) {
  if (s.kind != Kind::QDWO) return Real(0);
  return Real(1) / (16 * s.g_real());
}

}  // namespace ngas
