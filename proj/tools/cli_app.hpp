#pragma once

#include "ngas/ngas.hpp"
#include "ngas/tables.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace ngas::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode { kOk = 0, kUsage = 2, kDomain = 3, kConvergence = 4 };

using json = nlohmann::ordered_json;

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

inline std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Couplings print as exact decimals when they terminate, else as p/q.
inline std::string format_g(const Rational& g) {
  Integer den = mp::denominator(g);
  int twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return to_string(g);
  const int places = std::max(twos, fives);
  if (places == 0) return mp::numerator(g).str();
  return to_fixed(to_real(g), places);
}

inline std::string num(const Real& x) { return to_fixed(x, output_decimals()); }
inline std::string num(double x) { return to_fixed(Real(x), output_decimals()); }

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footer;

  std::string csv() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << "\n";
    };
    line(header);
    for (auto& r : rows) line(r);
    for (auto& f : footer) os << "# " << f << "\n";
    return os.str();
  }

  json to_json() const {
    json arr = json::array();
    for (auto& r : rows) {
      json o = json::object();
      for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
      arr.push_back(o);
    }
    json out{{"columns", header}, {"rows", arr}};
    if (!footer.empty()) out["notes"] = footer;
    return out;
  }
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string format = "csv";
  std::string manifest_path;
  std::string command;
  json params = json::object();
};

inline void emit(Context& ctx, const std::string& payload) {
  ctx.out << payload;
  if (!ctx.manifest_path.empty()) {
    json m{{"command", ctx.command},
           {"parameters", ctx.params},
           {"tool_version", kToolVersion},
           {"timestamp", utc_timestamp()},
           {"output_checksum", "fnv1a64:" + hex64(fnv1a64(payload))}};
    std::ofstream f(ctx.manifest_path);
    if (!f) throw DomainError("cannot write manifest: " + ctx.manifest_path);
    f << m.dump(2) << "\n";
  }
}

inline void emit_table(Context& ctx, const Table& t) {
  emit(ctx, ctx.format == "json" ? t.to_json().dump(2) + "\n" : t.csv());
}

inline std::vector<long> parse_levels(const std::vector<std::string>& items) {
  std::vector<long> out;
  for (auto& item : items) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size() || v < 0) throw CLI::ValidationError("level", "invalid level index: " + tok);
      out.push_back(v);
    }
  }
  return out;
}

inline Rational parse_coupling(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw CLI::ValidationError("g", "invalid coupling: " + s);
  }
}

inline Table spectrum_table(const std::string& model, const Rational& g, const std::vector<long>& levels,
                            const std::string& method, bool oracle, bool raw) {
  Table t;
  if (method == "squarewell") {
    SwModel m = parse_sw_model(model);
    t.header = {"n", "g", "E_LO", "E2", "oracle", "percent_error", "percent_error_E2"};
    for (long n : levels) {
      SquareWellRow r = square_well_row({m, static_cast<int>(n), m == SwModel::SHO ? Rational(0) : g}, oracle);
      Real shift = (m == SwModel::DWO && raw) ? Real(1) / (16 * to_real(g)) : Real(0);
      t.rows.push_back({std::to_string(n), format_g(r.g), num(r.E_LO - shift), num(r.E2 - shift),
                        oracle ? num(r.oracle - shift) : "", oracle ? num(r.err_LO) : "",
                        oracle ? num(r.err_E2) : ""});
    }
    if (m == SwModel::DWO && !raw) t.footer.push_back("double-well energies include the 1/(16g) reference shift");
  } else if (method == "harmonic") {
    Kind k = parse_kind(model);
    t.header = {"n", "g", "E_LO", "oracle", "percent_error", "omega", "phase"};
    for (long n : levels) {
      OscillatorSpec spec(k, g, n);
      auto rep = lo_spectrum(spec);
      Real shift = raw ? Real(0) : reference_shift(spec);
      Real E = rep.lo.E0 + shift;
      std::vector<std::string> row{std::to_string(n), format_g(spec.g), num(E)};
      if (oracle) {
        Real ex = Real(oracle_energy(spec)) + shift;
        row.push_back(num(ex));
        row.push_back(num(percent_error(static_cast<double>(E), static_cast<double>(ex))));
      } else {
        row.insert(row.end(), {"", ""});
      }
      row.push_back(num(rep.lo.omega));
      row.push_back(std::string(phase_name(rep.lo.phase)) + (rep.lo.phase_boundary ? "(boundary)" : ""));
      t.rows.push_back(row);
    }
    if (k == Kind::QDWO && !raw) t.footer.push_back("double-well energies include the 1/(16g) reference shift");
  } else {
    throw CLI::ValidationError("--method", "must be harmonic or squarewell");
  }
  return t;
}

inline std::string coeff_text(const NumericValue& v) { return v.is_exact() ? v.str() : to_string(v.real(), 30); }

inline std::string coeffs_output(const std::string& model, const Rational& g, long n, int order,
                                 const std::string& scheme, const std::string& format) {
  PerturbationSeries ps;
  if (scheme == "sfpt") {
    ps = sfpt_coefficients(anharmonic_K(parse_kind(model)), n, order);
  } else if (scheme == "mfpt") {
    ps = mfpt_coefficients(OscillatorSpec(parse_kind(model), g, n), order);
  } else {
    throw CLI::ValidationError("--scheme", "must be sfpt or mfpt");
  }
  // E_1 vanishes identically in the mean-field split, so listings start at the first non-trivial order.
  const int first = scheme == "mfpt" ? 2 : 1;
  if (format == "json") {
    json arr = json::array();
    for (std::size_t p = 0; p < ps.coefficients.size(); ++p) {
      const auto& c = ps.coefficients[p];
      json o{{"p", p}};
      if (c.is_exact()) {
        o["numerator"] = mp::numerator(c.exact()).str();
        o["denominator"] = mp::denominator(c.exact()).str();
      } else {
        o["decimal"] = to_string(c.real(), 30);
      }
      arr.push_back(o);
    }
    json out{{"scheme", scheme}, {"model", model}, {"g", format_g(g)}, {"n", n}, {"exact", ps.exact},
             {"omega", ps.omega.str(30)}, {"coefficients", arr}};
    return out.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream os;
    os << "p,value\n";
    for (std::size_t p = 0; p < ps.coefficients.size(); ++p) os << p << "," << coeff_text(ps.coefficients[p]) << "\n";
    return os.str();
  }
  std::ostringstream os;
  for (int p = first; p < static_cast<int>(ps.coefficients.size()); ++p)
    os << (p > first ? ", " : "") << coeff_text(ps.coefficients[p]);
  os << "\n";
  return os.str();
}

inline Table resum_table(const std::string& model, const Rational& g, long n, int order, double alpha,
                         const std::string& method, std::optional<double> rc, int nc, bool nc_given, double eps, bool oracle) {
  OscillatorSpec spec(parse_kind(model), g, n);
  const Real shift = reference_shift(spec);
  auto E = mfpt_coefficients(spec, order).reals();
  Table t;
  std::optional<Real> ex;
  if (oracle) ex = Real(oracle_energy(spec)) + shift;
  if (method == "mot") {
    auto r = optimal_truncation(E);
    t.header = {"g", "E0", "N0", "E_MOT", "oracle", "percent_error"};
    Real val = r.E_MOT + shift;
    t.rows.push_back({format_g(g), num(E[0] + shift), std::to_string(r.N0), num(val), ex ? num(*ex) : "",
                      ex ? num(percent_error(static_cast<double>(val), static_cast<double>(*ex))) : ""});
    if (r.growing_from_start) t.footer.push_back("terms grow from E_2 onward; truncated at N0 = 2");
  } else if (method == "borel") {
    // Unspecified r_c/N_c fall back to the reference-table inputs when (model, g, alpha) is a table row.
    for (auto& row : borel_table_specs()) {
      if (row.kind != spec.kind || row.g != spec.g || row.alpha != alpha || n != 0) continue;
      if (!rc) {
        rc = static_cast<double>(to_real(row.r_c));
        t.footer.push_back("r_c taken from the reference table");
      }
      if (!nc_given) {
        nc = row.N_c;
        t.footer.push_back("N_c taken from the reference table");
      }
    }
    const Real a(alpha);
    auto est = estimate_singularity(borel_transform(E, a), kDefaultSingularityWindow);
    Real r_c = rc ? Real(*rc) : est.r_c;
    auto b = borel_sum(E, a, r_c, nc, Real(eps));
    t.header = {"g", "alpha", "r_c", "p", "N_c", "delta_E", "E0", "E_tot", "oracle", "percent_error"};
    Real val = b.E_tot + shift;
    t.rows.push_back({format_g(g), num(alpha), num(r_c), num(est.p_exp), std::to_string(nc), num(b.delta_E),
                      num(E[0] + shift), num(val), ex ? num(*ex) : "",
                      ex ? num(percent_error(static_cast<double>(val), static_cast<double>(*ex))) : ""});
    if (!rc) t.footer.push_back("r_c estimated from the coefficient sequence");
  } else {
    throw CLI::ValidationError("--method", "must be mot or borel");
  }
  if (spec.kind == Kind::QDWO) t.footer.push_back("double-well energies include the 1/(16g) reference shift");
  return t;
}

inline Table tables_output(int chapter, int table, bool estimate_rc, bool oracle) {
  Table t;
  if (chapter == 3) {
    auto specs = square_well_table_specs(table);
    auto rows = parallel_rows<SquareWellRowSpec, SquareWellRow>(
        specs, [oracle](const SquareWellRowSpec& s) { return square_well_row(s, oracle); });
    if (table == 2) t.header = {"n_s", "E_LO", "Error_LO_pct", "E2", "oracle", "Error_pct"};
    else t.header = {"n_s", "g", "E_LO", "Error_LO_pct", "E2", "oracle", "Error_pct"};
    for (auto& r : rows) {
      std::vector<std::string> row{std::to_string(r.n_s)};
      if (table != 2) row.push_back(format_g(r.g));
      row.insert(row.end(), {num(r.E_LO), oracle ? num(r.err_LO) : "", num(r.E2), oracle ? num(r.oracle) : "",
                             oracle ? num(r.err_E2) : ""});
      t.rows.push_back(row);
    }
    if (table == 3) t.footer.push_back("energies include the 1/(16g) reference shift");
  } else if (chapter == 5 && table == 1) {
    auto rows = parallel_rows<MotRowSpec, MotRow>(mot_table_specs(),
                                                  [oracle](const MotRowSpec& s) { return mot_row(s.kind, s.g, oracle); });
    t.header = {"model", "g", "E0", "N0", "E_MOT", "oracle", "Error_pct"};
    for (auto& r : rows)
      t.rows.push_back({std::string(kind_name(r.kind)), format_g(r.g), num(r.E0), std::to_string(r.N0), num(r.E_MOT),
                        oracle ? num(r.oracle) : "", oracle ? num(r.err) : ""});
    t.footer.push_back("QDWO energies include the 1/(16g) reference shift");
  } else if (chapter == 5 && table == 2) {
    auto rows = parallel_rows<BorelRowSpec, BorelRow>(
        borel_table_specs(), [=](const BorelRowSpec& s) { return borel_row(s, estimate_rc, oracle); });
    t.header = {"model", "alpha", "g", "r_c", "N_c", "delta_E", "E0", "E_tot", "oracle", "Er_pct"};
    for (auto& r : rows)
      t.rows.push_back({std::string(kind_name(r.in.kind)), std::to_string(r.in.alpha), format_g(r.in.g),
                        estimate_rc ? num(r.r_c) : format_g(r.in.r_c), std::to_string(r.in.N_c), num(r.delta_E),
                        num(r.E0), num(r.E_tot), oracle ? num(r.oracle) : "", oracle ? num(r.err) : ""});
    t.footer.push_back("QDWO energies include the 1/(16g) reference shift");
  } else {
    throw CLI::ValidationError("--table", "chapter 3 has tables 1-3, chapter 5 has tables 1-2");
  }
  return t;
}

inline std::string phi4_output(double mr, std::optional<double> gr, std::optional<double> eta_in, int grid,
                               std::optional<double> sigma_max, int kgrid, double kmax, const std::string& format) {
  if (grid < 1) throw CLI::ValidationError("--sigma-grid", "must be >= 1");
  Phi4Params base = gr ? Phi4Params::from_coupling(Real(mr), Real(*gr)) : Phi4Params::from_eta(Real(mr), Real(*eta_in));
  const Real bound2 = sigma_domain(base);
  const Real bound = mp::sqrt(bound2);
  Real top = sigma_max ? Real(*sigma_max) : bound;
  Table pot;
  pot.header = {"sigma", "t", "U0_rel"};
  for (int i = 0; i <= grid; ++i) {
    Real s = i == grid && !sigma_max ? bound : top * i / grid;
    if (s > bound) {
      pot.footer.push_back("rows truncated at sigma^2_min = " + num(bound2) + " (no gap solution beyond)");
      break;
    }
    Phi4Params p = base;
    p.sigma = s;
    auto sol = solve_gap_t(p);
    pot.rows.push_back({num(s), num(sol.t), num(effective_potential(p))});
  }
  Table rho;
  rho.header = {"k", "rho"};
  for (int i = 0; i <= kgrid; ++i) {
    Real k = Real(kmax) * mr * i / std::max(1, kgrid);
    rho.rows.push_back({num(k), num(condensate_ratio(k, Real(mr)))});
  }
  if (format == "json") {
    json out{{"m_R", mr}, {"eta", static_cast<double>(base.eta)}, {"sigma2_min", num(bound2)},
             {"potential", pot.to_json()}, {"condensate", rho.to_json()}};
    return out.dump(2) + "\n";
  }
  return pot.csv() + "\n" + rho.csv();
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean-field spectra, perturbation coefficients and resummation for anharmonic oscillators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Context ctx{out, err};

  std::string model, g_text, method = "harmonic", scheme = "mfpt";
  std::vector<std::string> level_items;
  bool no_oracle = false, raw = false, estimate_rc = false;
  long level = 0;
  int order = 5, nc = 20, chapter = 5, table = 1, grid = 100, kgrid = 20;
  double alpha = 1, eps = kDefaultBorelEps, mr = 1, kmax = 5;
  std::optional<double> rc, gr, eta, sigma_max;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", ctx.format, "Output format")->check(CLI::IsMember({"csv", "json", "list"}));
    sub->add_option("--manifest", ctx.manifest_path, "Write a run manifest (JSON) to this path");
  };

  auto* sp = app.add_subcommand("spectrum", "Leading-order energies with oracle comparison");
  sp->add_option("model", model, "QAHO|QDWO|SAHO|OAHO|SHO (AHO/DWO accepted)")->required();
  sp->add_option("g", g_text, "Coupling (decimal or p/q)")->required();
  sp->add_option("n", level_items, "Level indices (space or comma separated)")->required();
  sp->add_option("--method", method, "harmonic|squarewell")->check(CLI::IsMember({"harmonic", "squarewell"}));
  sp->add_flag("--no-oracle", no_oracle, "Skip the diagonalisation reference");
  sp->add_flag("--raw", raw, "Report double-well energies without the 1/(16g) shift");
  add_common(sp);

  auto* co = app.add_subcommand("coeffs", "Perturbation coefficients E_p");
  co->add_option("model", model)->required();
  co->add_option("g", g_text)->required();
  co->add_option("n", level)->required()->check(CLI::NonNegativeNumber);
  co->add_option("--order", order, "Highest order P")->check(CLI::Range(1, 400));
  co->add_option("--scheme", scheme, "sfpt|mfpt")->check(CLI::IsMember({"sfpt", "mfpt"}));
  add_common(co);

  auto* re = app.add_subcommand("resum", "Optimal truncation or Borel summation of the MFPT series");
  re->add_option("model", model)->required();
  re->add_option("g", g_text)->required();
  re->add_option("n", level)->required()->check(CLI::NonNegativeNumber);
  re->add_option("--order", order, "Coefficients computed (default 45)");
  re->add_option("--alpha", alpha, "Growth index")->check(CLI::PositiveNumber);
  re->add_option("--method", method, "mot|borel")->check(CLI::IsMember({"mot", "borel"}));
  re->add_option("--rc", rc, "Override the singularity radius");
  re->add_option("--nc", nc, "Terms kept in the conformal series")->check(CLI::Range(1, 400));
  re->add_option("--eps", eps, "Upper cutoff 1 - eps")->check(CLI::Range(1e-12, 0.5));
  re->add_flag("--no-oracle", no_oracle);
  add_common(re);

  auto* tb = app.add_subcommand("tables", "Regenerate a reference table");
  tb->add_option("--chapter", chapter)->check(CLI::IsMember({3, 5}));
  tb->add_option("--table", table)->check(CLI::Range(1, 3));
  tb->add_flag("--estimate-rc", estimate_rc, "Use self-estimated r_c in the Borel table");
  tb->add_flag("--no-oracle", no_oracle);
  add_common(tb);

  auto* ph = app.add_subcommand("phi4", "Renormalised effective potential and condensate ratio");
  ph->add_option("--mr", mr, "Renormalised mass")->check(CLI::PositiveNumber);
  auto* og = ph->add_option("--gr", gr, "Renormalised coupling (eta = -4 pi^2/g_R)");
  auto* oe = ph->add_option("--eta", eta, "eta directly");
  og->excludes(oe);
  ph->add_option("--sigma-grid", grid, "Grid intervals on [0, sigma_max]");
  ph->add_option("--sigma-max", sigma_max, "Upper end of the sigma grid (default: domain bound)");
  ph->add_option("--k-grid", kgrid, "Intervals of the k grid");
  ph->add_option("--k-max", kmax, "k range in units of m_R");
  add_common(ph);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (sp->parsed()) {
      ctx.command = "spectrum";
      auto levels = parse_levels(level_items);
      if (ctx.format == "list") ctx.format = "csv";
      ctx.params = {{"model", model}, {"g", g_text}, {"n", levels}, {"method", method}, {"oracle", !no_oracle}, {"raw", raw}};
      emit_table(ctx, spectrum_table(model, parse_coupling(g_text), levels, method, !no_oracle, raw));
    } else if (co->parsed()) {
      ctx.command = "coeffs";
      if (co->count("--format") == 0) ctx.format = "list";
      ctx.params = {{"model", model}, {"g", g_text}, {"n", level}, {"order", order}, {"scheme", scheme}};
      emit(ctx, coeffs_output(model, parse_coupling(g_text), level, order, scheme, ctx.format));
    } else if (re->parsed()) {
      ctx.command = "resum";
      if (ctx.format == "list") ctx.format = "csv";
      if (re->count("--order") == 0) order = kTableOrder;
      if (method == "harmonic") method = "mot";
      ctx.params = {{"model", model}, {"g", g_text},     {"n", level},   {"order", order},
                    {"alpha", alpha}, {"method", method}, {"nc", nc},     {"eps", eps}};
      if (rc) ctx.params["rc"] = *rc;
      emit_table(ctx, resum_table(model, parse_coupling(g_text), level, order, alpha, method, rc, nc, re->count("--nc") > 0, eps, !no_oracle));
    } else if (tb->parsed()) {
      ctx.command = "tables";
      if (ctx.format == "list") ctx.format = "csv";
      ctx.params = {{"chapter", chapter}, {"table", table}, {"estimate_rc", estimate_rc}, {"oracle", !no_oracle}};
      emit_table(ctx, tables_output(chapter, table, estimate_rc, !no_oracle));
    } else if (ph->parsed()) {
      ctx.command = "phi4";
      if (ctx.format == "list") ctx.format = "csv";
      if (!gr && !eta) throw CLI::ValidationError("phi4", "one of --gr or --eta is required");
      ctx.params = {{"mr", mr}, {"sigma_grid", grid}, {"k_grid", kgrid}, {"k_max", kmax}};
      if (gr) ctx.params["gr"] = *gr;
      if (eta) ctx.params["eta"] = *eta;
      if (sigma_max) ctx.params["sigma_max"] = *sigma_max;
      emit(ctx, phi4_output(mr, gr, eta, grid, sigma_max, kgrid, kmax, ctx.format));
    }
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << "\n";
    return kConvergence;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}

}  // namespace ngas::cli
