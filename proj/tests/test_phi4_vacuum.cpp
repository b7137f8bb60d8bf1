#include "ngas/phi4.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ngas;

namespace {

constexpr double kGapTol = 1e-12;

Phi4Params at(double eta, const Real& sigma) { return Phi4Params::from_eta(Real(1), Real(eta), sigma); }

}  // namespace

TEST_CASE("symmetric point solves with t = 1") {
  for (double eta : {-3.0, 0.0, 1.0, 10.0}) {
    auto s = solve_gap_t(at(eta, Real(0)));
    CHECK(s.t == 1);
    CHECK(s.converged);
    CHECK(effective_potential(at(eta, Real(0))) == 0);
  }
}

TEST_CASE("admissible domain bound") {
  CHECK(sigma_domain(at(0, Real(0))) == 0);
  for (double eta : {1.0, 5.0, 10.0}) CHECK(sigma_domain(at(eta, Real(0))) > 0);
  CHECK_THROWS_AS(solve_gap_t(at(0, Real("0.01"))), DomainError);
  const Real bound = sqrt(sigma_domain(at(10, Real(0))));
  CHECK_THROWS_AS(solve_gap_t(at(10, bound * Real("1.01"))), DomainError);
  auto edge = solve_gap_t(at(10, bound));
  CHECK(edge.tangent);
  CHECK(abs(edge.t - exp(Real(-10))) < Real(1e-30));
}

TEST_CASE("gap residual across the admissible domain") {
  for (double eta : {1.0, 5.0, 10.0}) {
    const Real bound = sqrt(sigma_domain(at(eta, Real(0))));
    Real prev_t = 2;
    for (int i = 0; i < 200; ++i) {
      auto s = solve_gap_t(at(eta, bound * i / 200));
      INFO("eta=" << eta << " i=" << i);
      CHECK(abs(s.residual) < Real(kGapTol));
      CHECK(s.t < prev_t);
      prev_t = s.t;
    }
  }
}

TEST_CASE("coupling and eta parametrisations agree") {
  const Real pi = boost::math::constants::pi<Real>();
  auto p = Phi4Params::from_coupling(Real(2), Real(-4) * pi * pi / 7);
  CHECK(abs(p.eta - 7) < Real(1e-40));
  CHECK_THROWS_AS(Phi4Params::from_coupling(Real(1), Real(0)), DomainError);
  CHECK_THROWS_AS(Phi4Params::from_eta(Real(0), Real(1)), DomainError);
}

TEST_CASE("symmetric vacuum is the global minimum and is stable") {
  for (double eta : {1.0, 5.0, 10.0}) {
    const Real bound = sqrt(sigma_domain(at(eta, Real(0))));
    for (int i = 1; i <= 100; ++i) CHECK(effective_potential(at(eta, bound * i / 100)) > 0);
    const Real h = bound * Real(1e-6);
    const Real curv = 2 * effective_potential(at(eta, h)) / (h * h);
    CHECK(curv > 0);
    CHECK(abs(curv - 1) < Real(1e-6));
  }
}

TEST_CASE("condensate ratio") {
  CHECK(abs(condensate_ratio(Real(1), Real(1)) - 1 / sqrt(Real(2))) < Real(1e-12));
  CHECK(abs(condensate_ratio(sqrt(Real(3)) * 2, Real(2)) - Real(1) / 2) < Real(1e-40));
  Real prev = 2;
  for (int i = 0; i <= 100; ++i) {
    Real r = condensate_ratio(Real(i) / 10, Real(1));
    CHECK(r < prev);
    prev = r;
  }
  const Real k = Real(1e6);
  CHECK(abs(condensate_ratio(k, Real(1)) * k - 1) < Real(1e-11));
  CHECK_THROWS_AS(condensate_ratio(Real(-1), Real(1)), DomainError);
}
