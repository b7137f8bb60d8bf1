#include "ngas/resum.hpp"
#include "ngas/tables.hpp"

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <catch2/catch_amalgamated.hpp>

using namespace ngas;

namespace {

constexpr double kRoundTripTol = 1e-14;
constexpr double kToyTol = 1e-8;
constexpr double kStabilityTol = 1e-4;

// Alternating factorial series sum_k (-1)^k k!, whose Borel sum is e E_1(1).
std::vector<Real> euler_series(int P) {
  std::vector<Real> E(P + 1);
  Real f = 1;
  E[0] = 0;
  for (int k = 1; k <= P; ++k) {
    f *= k;
    E[k] = k % 2 ? -f : f;
  }
  return E;
}

}  // namespace

TEST_CASE("conformal map round-trip") {
  for (double s : {0.5, 1.0, 4 * 2.667, 40.0}) {
    for (int i = 0; i <= 999; ++i) {
      Real z = Real(i) / 1000;
      Real back = conformal_map(inverse_map(z, Real(s)), Real(s));
      CHECK(abs(back - z) < Real(kRoundTripTol));
    }
  }
  CHECK_THROWS_AS(inverse_map(Real(1), Real(1)), DomainError);
  CHECK_THROWS_AS(conformal_map(Real(-2), Real(1)), DomainError);
}

TEST_CASE("singularity estimator is exact on binomial series") {
  for (double R : {0.5, 2.0, 7.0}) {
    for (double p : {-0.5, -1.0, -2.5, 1.5}) {
      std::vector<Real> b{Real(1)};
      for (int j = 1; j <= 40; ++j) b.push_back(b.back() * (Real(p) - (j - 1)) / (j * Real(R)));
      auto e = estimate_singularity(b, 5);
      CHECK(abs(e.r_c - R) < Real(1e-30));
      CHECK(abs(e.p_exp - p) < Real(1e-30));
      CHECK(e.r_spread < Real(1e-30));
    }
  }
  CHECK_THROWS_AS(estimate_singularity(std::vector<Real>(4, Real(1)), 5), DomainError);
}

TEST_CASE("re-expansion reproduces the Borel function inside the disk") {
  std::vector<Real> b;
  for (int j = 0; j <= 30; ++j) b.push_back(pow(Real(-1) / 3, j));
  const Real rho = 4 * Real(3);
  auto B = reexpand_borel(b, 30, rho);
  const Real z = Real(1) / 10;
  const Real u = rho * z / ((1 - z) * (1 - z));
  Real lhs = 0, rhs = 0;
  for (int k = 1; k <= 30; ++k) lhs += B[k] * pow(z, k);
  for (int j = 1; j <= 30; ++j) rhs += b[j] * pow(u, j);
  // u = 1.48 < 3, so both sides converge to the same limit; compare against the closed form.
  const Real exact = 1 / (1 + u / 3) - 1;
  CHECK(abs(rhs - exact) < Real(1e-4));
  CHECK(abs(lhs - exact) < Real(1e-12));
}

TEST_CASE("Borel sum of the Euler series") {
  const Real exact = exp(Real(1)) * boost::math::expint(1, Real(1)) - 1;
  auto E = euler_series(45);
  auto r = borel_sum(E, Real(1), Real(1), 40);
  CHECK(abs(r.E_tot - exact) < Real(kToyTol));
  CHECK(r.quad_error <= Real(kQuadAbsTol));
  auto est = borel_sum_estimated(E, Real(1), 40);
  CHECK(abs(est.r_c - 1) < Real(1e-30));
  CHECK(abs(est.p_exp + 1) < Real(1e-30));
}

TEST_CASE("Borel sum stable in N_c and epsilon on the table rows") {
  for (auto& row : borel_table_specs()) {
    OscillatorSpec spec(row.kind, row.g, 0);
    auto E = mfpt_coefficients(spec, kTableOrder).reals();
    const Real alpha(row.alpha), rc = to_real(row.r_c);
    auto base = borel_sum(E, alpha, rc, row.N_c);
    auto more = borel_sum(E, alpha, rc, row.N_c + 5);
    auto tight = borel_sum(E, alpha, rc, row.N_c, Real(0.0005));
    INFO(kind_name(row.kind) << " g=" << to_string(row.g));
    CHECK(abs(more.E_tot - base.E_tot) < Real(kStabilityTol));
    CHECK(abs(tight.E_tot - base.E_tot) < Real(kStabilityTol));
  }
}

TEST_CASE("optimal truncation stops at the smallest term") {
  std::vector<Real> E{Real(1), Real(0), Real("-0.1"), Real("0.05"), Real("-0.04"), Real("0.06"), Real("-1")};
  auto t = optimal_truncation(E);
  CHECK(t.N0 == 4);
  CHECK(abs(t.E_MOT - Real("0.91")) < Real(1e-40));
  CHECK_FALSE(t.growing_from_start);
  std::vector<Real> grow{Real(1), Real(0), Real("-0.1"), Real("0.2"), Real("-0.4")};
  auto g = optimal_truncation(grow);
  CHECK(g.N0 == 2);
  CHECK(g.growing_from_start);
  std::vector<Real> shrink{Real(1), Real(0), Real("0.1"), Real("0.01"), Real("0.001")};
  CHECK_THROWS_AS(optimal_truncation(shrink), ConvergenceError);
}

TEST_CASE("input validation") {
  auto E = euler_series(20);
  CHECK_THROWS_AS(borel_sum(E, Real(0), Real(1), 10), DomainError);
  CHECK_THROWS_AS(borel_sum(E, Real(1), Real(-1), 10), DomainError);
  CHECK_THROWS_AS(borel_sum(E, Real(1), Real(1), 25), DomainError);
  CHECK_THROWS_AS(borel_sum(E, Real(1), Real(1), 10, Real(1)), DomainError);
}
