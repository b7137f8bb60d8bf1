#pragma once

#include "ngas/harmonic.hpp"
#include "ngas/mfpt.hpp"
#include "ngas/oracle.hpp"
#include "ngas/resum.hpp"
#include "ngas/squarewell.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <thread>
#include <vector>

namespace ngas {

// Maps rows to results on a small worker pool; results keep input order.
template <class In, class Out>
std::vector<Out> parallel_rows(const std::vector<In>& rows, std::function<Out(const In&)> fn) {
  std::vector<Out> out(rows.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) out[i] = fn(rows[i]);
    return out;
  }
  for (std::size_t start = 0; start < rows.size(); start += workers) {
    std::vector<std::future<Out>> jobs;
    for (std::size_t i = start; i < std::min(rows.size(), start + workers); ++i)
      jobs.push_back(std::async(std::launch::async, fn, std::cref(rows[i])));
    for (std::size_t i = 0; i < jobs.size(); ++i) out[start + i] = jobs[i].get();
  }
  return out;
}

inline double percent_error(double value, double ref) { return 100.0 * std::fabs(value - ref) / std::fabs(ref); }

inline Kind sw_oracle_kind(SwModel m) {
  switch (m) {
    case SwModel::AHO: return Kind::QAHO;
    case SwModel::DWO: return Kind::QDWO;
    case SwModel::SHO: return Kind::SHO;
  }
  return Kind::SHO;
}

struct SquareWellRow {
  SwModel model;
  int n_s = 0;
  Rational g;
  Real E_LO, E2, oracle;
  double err_LO = 0, err_E2 = 0;
};

struct SquareWellRowSpec {
  SwModel model;
  int n_s;
  Rational g;
};

// Square-well LO and second-order energies; double-well values are referenced to the well bottom.
inline SquareWellRow square_well_row(const SquareWellRowSpec& in, bool with_oracle = true) {
  SquareWellRow r;
  r.model = in.model;
  r.n_s = in.n_s;
  r.g = in.g;
  const Real g = to_real(in.g);
  const Real shift = in.model == SwModel::DWO ? Real(1) / (16 * g) : Real(0);
  auto lo = sw_lo(in.model, g, in.n_s + 1);
  r.E_LO = lo.E_LO + shift;
  r.E2 = sw_second_order_converged(in.model, g, in.n_s + 1).total + shift;
  if (with_oracle) {
    OscillatorSpec spec(sw_oracle_kind(in.model), in.g, in.n_s);
    r.oracle = Real(oracle_energy(spec)) + reference_shift(spec);
    r.err_LO = percent_error(static_cast<double>(r.E_LO), static_cast<double>(r.oracle));
    r.err_E2 = percent_error(static_cast<double>(r.E2), static_cast<double>(r.oracle));
  }
  return r;
}

inline std::vector<SquareWellRowSpec> square_well_table_specs(int table) {
  std::vector<SquareWellRowSpec> rows;
  const std::vector<Rational> gs{make_rational(1, 10), 1, 10, 100};
  if (table == 1 || table == 3) {
    for (int ns : {0, 1, 2, 4, 10})
      for (auto& g : gs) rows.push_back({table == 1 ? SwModel::AHO : SwModel::DWO, ns, g});
  } else if (table == 2) {
    for (int ns : {0, 1, 2, 5, 10, 15}) rows.push_back({SwModel::SHO, ns, 0});
  } else {
    throw DomainError("square-well tables are numbered 1..3");
  }
  return rows;
}

struct MotRow {
  Kind kind;
  Rational g;
  Real E0;
  int N0 = 0;
  Real E_MOT;
  Real oracle;
  double err = 0;
};

inline constexpr int kTableOrder = 45;

inline MotRow mot_row(Kind kind, const Rational& g, bool with_oracle = true) {
  OscillatorSpec spec(kind, g, 0);
  const Real shift = reference_shift(spec);
  auto E = mfpt_coefficients(spec, kTableOrder).reals();
  auto t = optimal_truncation(E);
  MotRow r{kind, g, E[0] + shift, t.N0, t.E_MOT + shift, Real(0), 0};
  if (with_oracle) {
    r.oracle = Real(oracle_energy(spec)) + shift;
    r.err = percent_error(static_cast<double>(r.E_MOT), static_cast<double>(r.oracle));
  }
  return r;
}

struct MotRowSpec {
  Kind kind;
  Rational g;
};

inline std::vector<MotRowSpec> mot_table_specs() {
  std::vector<MotRowSpec> rows;
  for (auto g : {make_rational(1, 10), make_rational(1), make_rational(10), make_rational(100)}) rows.push_back({Kind::QAHO, g});
  for (auto g : {make_rational(1, 10), make_rational(1), make_rational(50), make_rational(200)}) rows.push_back({Kind::SAHO, g});
  for (auto g : {make_rational(1, 10), make_rational(1), make_rational(10), make_rational(100)}) rows.push_back({Kind::QDWO, g});
  return rows;
}

struct BorelRowSpec {
  Kind kind;
  Rational g;
  int alpha;
  Rational r_c;  // tabulated singularity radius
  int N_c;
};

// Inputs of the Borel table. The sextic rows at large coupling correspond to g = 50 and 200,
// the couplings whose LO and reference energies the same values carry in the truncation table.
inline std::vector<BorelRowSpec> borel_table_specs() {
  auto q = [](const char* s) { return parse_rational(s); };
  return {
      {Kind::QAHO, q("0.1"), 1, q("6.071"), 6},  {Kind::QAHO, q("1"), 1, q("2.667"), 7},
      {Kind::QAHO, q("10"), 1, q("2.133"), 8},   {Kind::QAHO, q("100"), 1, q("2.028"), 10},
      {Kind::SAHO, q("0.1"), 2, q("13.3"), 20},  {Kind::SAHO, q("1"), 2, q("8.56"), 20},
      {Kind::SAHO, q("50"), 2, q("7.14"), 20},   {Kind::SAHO, q("200"), 2, q("7.02"), 20},
      {Kind::QDWO, q("0.5"), 1, q("1.191"), 20}, {Kind::QDWO, q("1"), 1, q("1.455"), 11},
      {Kind::QDWO, q("10"), 1, q("1.872"), 20},  {Kind::QDWO, q("100"), 1, q("1.972"), 18},
  };
}

struct BorelRow {
  BorelRowSpec in;
  Real r_c;
  Real p_exp;
  Real delta_E, E0, E_tot, oracle;
  double err = 0;
};

inline BorelRow borel_row(const BorelRowSpec& in, bool estimate_rc, bool with_oracle = true,
                          const Real& eps = Real(kDefaultBorelEps)) {
  OscillatorSpec spec(in.kind, in.g, 0);
  const Real shift = reference_shift(spec);
  auto E = mfpt_coefficients(spec, kTableOrder).reals();
  const Real alpha(in.alpha);
  auto est = estimate_singularity(borel_transform(E, alpha), kDefaultSingularityWindow);
  const Real rc = estimate_rc ? est.r_c : to_real(in.r_c);
  auto b = borel_sum(E, alpha, rc, in.N_c, eps);
  BorelRow r{in, rc, est.p_exp, b.delta_E, E[0] + shift, b.E_tot + shift, Real(0), 0};
  if (with_oracle) {
    r.oracle = Real(oracle_energy(spec)) + shift;
    r.err = percent_error(static_cast<double>(r.E_tot), static_cast<double>(r.oracle));
  }
  return r;
}

}  // namespace ngas
