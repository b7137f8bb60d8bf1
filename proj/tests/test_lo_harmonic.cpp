#include "ngas/harmonic.hpp"
#include "ngas/oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ngas;

namespace {

// Printed LO column entries carry four decimals, some truncated rather than rounded.
constexpr double kPrintedTol = 1e-4;
constexpr double kAccuracyEnvelope = 0.15;

struct Row {
  Kind kind;
  const char* g;
  double E0;
};

const std::vector<Row> kLORows{
    {Kind::QAHO, "0.1", 0.5603}, {Kind::QAHO, "1", 0.8125},   {Kind::QAHO, "10", 1.5312},  {Kind::QAHO, "100", 3.1924},
    {Kind::SAHO, "0.1", 0.5964}, {Kind::SAHO, "1", 0.8378},   {Kind::SAHO, "50", 1.9735},  {Kind::SAHO, "200", 2.7606},
    {Kind::QDWO, "0.1", 0.5496}, {Kind::QDWO, "0.5", 0.4770}, {Kind::QDWO, "1", 0.5989},   {Kind::QDWO, "10", 1.4097},
    {Kind::QDWO, "100", 3.1338},
};

double referenced_E0(const OscillatorSpec& spec) {
  return static_cast<double>(lo_spectrum(spec).lo.E0 + reference_shift(spec));
}

}  // namespace

TEST_CASE("ground-state LO energies of the tabulated couplings") {
  for (auto& r : kLORows) {
    OscillatorSpec spec(r.kind, parse_rational(r.g), 0);
    INFO(kind_name(r.kind) << " g=" << r.g);
    CHECK(std::fabs(referenced_E0(spec) - r.E0) < kPrintedTol);
  }
}

TEST_CASE("LO energy is a variational upper bound for the ground state") {
  for (Kind k : {Kind::QAHO, Kind::SAHO, Kind::OAHO, Kind::QDWO}) {
    for (const char* g : {"0.01", "0.05", "0.1", "0.5", "1", "10", "100"}) {
      OscillatorSpec spec(k, parse_rational(g), 0);
      INFO(kind_name(k) << " g=" << g);
      CHECK(static_cast<double>(lo_spectrum(spec).lo.E0) >= oracle_energy(spec));
    }
  }
}

TEST_CASE("LO accuracy envelope on the tabulated couplings") {
  for (auto& r : kLORows) {
    OscillatorSpec spec(r.kind, parse_rational(r.g), 0);
    const double ex = oracle_energy(spec) + static_cast<double>(reference_shift(spec));
    INFO(kind_name(r.kind) << " g=" << r.g);
    CHECK(std::fabs(referenced_E0(spec) - ex) / ex < kAccuracyEnvelope);
  }
}

TEST_CASE("weak coupling approaches the oscillator levels") {
  for (long n : {0L, 1L, 5L}) {
    double prev = 1;
    for (const char* g : {"1e-2", "1e-4", "1e-6", "1e-8"}) {
      auto rep = lo_spectrum(OscillatorSpec(Kind::QAHO, parse_rational(g), n));
      double d = static_cast<double>(abs(rep.lo.E0 - to_real(xi_of(n).xi)));
      CHECK(d < prev);
      prev = d;
    }
    CHECK(prev < 1e-6);
  }
}

TEST_CASE("double-well energy jumps across the critical coupling") {
  auto s = xi_of(0);
  Real gc = qdwo_critical_coupling(s);
  Real gl = gc * (1 - Real(1e-8)), gr = gc * (1 + Real(1e-8));
  CHECK(qdwo_phase(gl, s) == Phase::SSB);
  CHECK(qdwo_phase(gr, s) == Phase::SR);
  Real wl = qdwo_ssb_omega(gl, s), wr = qdwo_sr_omega(gr, s);
  Real El = lo_energies<Real>(Kind::QDWO, Phase::SSB, gl, to_real(s.xi), wl).E0;
  Real Er = lo_energies<Real>(Kind::QDWO, Phase::SR, gr, to_real(s.xi), wr).E0;
  CHECK(abs(El - Er) > Real(0.01));
}

TEST_CASE("exact rational gap roots are recognised") {
  auto q = lo_spectrum(OscillatorSpec(Kind::QAHO, 1, 0));
  REQUIRE(q.lo.omega_exact);
  CHECK(*q.lo.omega_exact == 2);
  CHECK(q.lo.E0 == Real(13) / 16);
  CHECK(q.formula_id == FormulaId::QahoCubic);

  auto sa = lo_spectrum(OscillatorSpec(Kind::SAHO, make_rational(8, 15), 0));
  REQUIRE(sa.lo.omega_exact);
  CHECK(*sa.lo.omega_exact == 2);

  auto dw = lo_spectrum(OscillatorSpec(Kind::QDWO, make_rational(1, 12), 0));
  CHECK(dw.lo.phase == Phase::SSB);
  CHECK(dw.formula_id == FormulaId::QdwoSSB);
  REQUIRE(dw.lo.omega_exact);
  CHECK(*dw.lo.omega_exact == 1);
  CHECK(abs(dw.lo.sigma2 - Real(3) / 2) < Real(1e-45));

  auto irr = lo_spectrum(OscillatorSpec(Kind::QAHO, make_rational(1, 10), 0));
  CHECK_FALSE(irr.lo.omega_exact);
}

TEST_CASE("gap polynomial vanishes at the solved frequency") {
  for (Kind k : {Kind::QAHO, Kind::QDWO, Kind::SAHO, Kind::OAHO}) {
    for (long n : {0L, 2L}) {
      OscillatorSpec spec(k, make_rational(3, 7), n);
      auto rep = lo_spectrum(spec);
      auto c = gap_polynomial(k, rep.lo.phase, spec.g, spec.index());
      Real acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) acc = acc * rep.lo.omega + to_real(c[i]);
      CHECK(abs(acc) < Real(1e-30));
    }
  }
}
