#ifndef HESSCUB_TOOLS_CLI_APP_HPP
#define HESSCUB_TOOLS_CLI_APP_HPP

// Command dispatch for the hesscub executable. Kept in a header so the test
// suite can drive commands in-process.
//
// Exit codes: 0 pass, 1 certificate/verification failure, 2 usage or degree
// error, 3 I/O error.

#include <hesscub/hesscub.hpp>
#include <hesscub/json_io.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hesscub::cli {

enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_usage = 2, exit_io = 3 };

using io::json;

struct Tolerances {
  double normal_tol = 1e-8;
  double rank_tol = 1e-10;
  double weight_tol = 1e-12;
  double exact_tol = 1e-7;

  json to_json() const {
    return {{"normal_tol", normal_tol},
            {"rank_tol", rank_tol},
            {"weight_tol", weight_tol},
            {"exact_tol", exact_tol}};
  }
};

namespace detail {

inline json matrix_to_json(const CMatrix<double> &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(io::complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json exactness_to_json(const ExactnessReport<double> &r) {
  json pairs = json::array();
  for (const auto &p : r.pairs)
    pairs.push_back({{"j", p.j}, {"k", p.k}, {"residual", p.residual}});
  json failing = json::array();
  for (const auto &p : r.failing())
    failing.push_back({{"j", p.j}, {"k", p.k}, {"residual", p.residual}});
  return {{"max_residual", r.max_residual},
          {"tolerance", r.tolerance},
          {"passed", r.passed},
          {"pairs", std::move(pairs)},
          {"failing_pairs", std::move(failing)}};
}

struct Diagnosis {
  OrthoBasis<double> basis;
  HessenbergData<double> hessenberg;
  CommutatorReport<double> commutator;
  double congruence_residual = 0.0;
  json report;
};

inline void require_degree(const MomentTable<double> &table, int d) {
  if (d < 0)
    throw DegreeError("degree d must be nonnegative");
  if (table.max_total_degree() < 2 * d + 2)
    throw DegreeError("d = " + std::to_string(d) + " needs moments up to max_total_degree D >= " +
                      std::to_string(2 * d + 2) + "; file has D = " +
                      std::to_string(table.max_total_degree()));
}

inline Diagnosis diagnose(const MomentTable<double> &table, int d, const Tolerances &tol) {
  require_degree(table, d);
  Diagnosis out;
  out.basis = orthonormal_basis(table, d, tol.rank_tol);
  out.hessenberg = build_hessenberg(table, out.basis, d);
  out.commutator = self_commutator(out.hessenberg, tol.normal_tol);
  out.congruence_residual = sigma_form(out.hessenberg).congruence_residual;

  const auto &h = out.hessenberg;
  const auto &c = out.commutator;
  const auto &eq = c.equivalences;
  json eigs = json::array();
  for (Eigen::Index i = 0; i < c.eigenvalues.size(); ++i)
    eigs.push_back(c.eigenvalues(i));
  out.report = {
      {"degree", d},
      {"hessenberg",
       {{"matrix", matrix_to_json(h.matrix)},
        {"defect", h.defect},
        {"defect_sq_raw", h.defect_sq_raw},
        {"structure_residual", h.structure_residual},
        {"norm", std::sqrt(c.norm_sq)}}},
      {"commutator",
       {{"lambda_minus", c.lambda_minus},
        {"defect_sq_bound", c.defect_sq_bound},
        {"trace", c.trace},
        {"negative_count", c.negative_count},
        {"corrected_min", c.corrected_min},
        {"tolerance", c.tolerance},
        {"eigenvalues", std::move(eigs)}}},
      {"certificate",
       {{"normal", eq.normal},
        {"det_certificate", eq.det_certificate},
        {"defect_vanishes", eq.defect_vanishes},
        {"subspace_invariant", eq.subspace_invariant},
        {"agree", eq.agree()},
        {"passed", eq.all()}}},
      {"congruence_residual", out.congruence_residual}};
  return out;
}

inline MomentTable<double> read_moments(const std::string &path) {
  return io::moments_from_json(io::read_json_file(path));
}

inline json input_descriptor(const std::string &path, const MomentTable<double> &table) {
  return {{"moments", path}, {"max_total_degree", table.max_total_degree()}, {"mass", table.mass()}};
}

} // namespace detail

//-----------------------------------------------------------------------------

struct FixtureArgs {
  std::string name;
  int degree = 0;
  int n = 5;
  double a = 1.0;
  int count = 4;
  std::uint64_t seed = 0;
  double radius = 1.0;
  std::string out;
  std::string atoms_out;
};

inline int cmd_fixture(const FixtureArgs &args, std::ostream &out) {
  std::optional<AtomicMeasure<double>> atoms;
  std::optional<MomentTable<double>> table;
  if (args.name == "circle") {
    table = circle_arclength<double>(args.degree);
  } else if (args.name == "ngon") {
    table = ngon<double>(args.n, args.degree);
  } else if (args.name == "dirichlet") {
    table = dirichlet_interval<double>(args.a, args.degree);
  } else if (args.name == "atoms") {
    atoms = random_atoms(args.count, args.seed, args.radius);
    table = moments_from_atoms(*atoms, args.degree);
  } else {
    throw ValidationError("unknown fixture \"" + args.name + "\"");
  }

  const json doc = io::moments_to_json(*table);
  if (args.out.empty())
    out << doc.dump(2) << '\n';
  else
    io::write_json_file(args.out, doc);

  if (atoms) {
    std::string sidecar = args.atoms_out;
    if (sidecar.empty() && !args.out.empty())
      sidecar = args.out + ".atoms.json";
    if (!sidecar.empty())
      io::write_json_file(sidecar, io::atoms_to_json(*atoms));
  }
  return exit_pass;
}

//-----------------------------------------------------------------------------

inline int cmd_diagnose(const std::string &moments, int d, const Tolerances &tol, std::ostream &out) {
  const auto table = detail::read_moments(moments);
  auto diag = detail::diagnose(table, d, tol);
  json report = {{"command", "diagnose"},
                 {"input", detail::input_descriptor(moments, table)},
                 {"tolerances", tol.to_json()}};
  report.update(diag.report);
  out << report.dump(2) << '\n';
  return diag.commutator.equivalences.all() ? exit_pass : exit_fail;
}

//-----------------------------------------------------------------------------

struct QuadratureArgs {
  std::string moments;
  int d = 0;
  std::string mode;
  std::string out;
  bool force = false;
};

inline int cmd_quadrature(const QuadratureArgs &args, const Tolerances &tol, std::ostream &out) {
  const auto table = detail::read_moments(args.moments);
  detail::require_degree(table, args.d);
  json report = {{"command", "quadrature"},
                 {"mode", args.mode},
                 {"input", detail::input_descriptor(args.moments, table)},
                 {"degree", args.d},
                 {"tolerances", tol.to_json()}};

  Cubature<double> cub;
  bool certified = true;
  if (args.mode == "gaussian") {
    auto diag = detail::diagnose(table, args.d, tol);
    certified = diag.commutator.equivalences.all();
    report["diagnosis"] = diag.report;
    report["forced"] = args.force && !certified;
    if (!certified && !args.force) {
      report["cubature"] = nullptr;
      out << report.dump(2) << '\n';
      return exit_fail;
    }
    cub = normal_quadrature(diag.hessenberg, diag.basis, table, tol.normal_tol, tol.weight_tol,
                            args.force);
  } else if (args.mode == "harmonic") {
    cub = harmonic_cubature(table, args.d, tol.weight_tol, tol.rank_tol);
  } else {
    throw ValidationError("unknown mode \"" + args.mode + "\"");
  }

  const auto exact = verify_exactness(cub, table, tol.exact_tol);
  report["cubature"] = io::cubature_to_json(cub);
  report["exactness"] = detail::exactness_to_json(exact);
  if (!args.out.empty())
    io::write_json_file(args.out, io::cubature_to_json(cub));
  out << report.dump(2) << '\n';
  return certified && exact.passed ? exit_pass : exit_fail;
}

//-----------------------------------------------------------------------------

inline int cmd_verify(const std::string &moments, const std::string &cubature,
                      const std::string &expect, const Tolerances &tol, std::ostream &out) {
  const auto table = detail::read_moments(moments);
  const auto cub = io::cubature_from_json(io::read_json_file(cubature));
  if (!expect.empty() && expect != to_string(cub.contract.kind))
    throw DegreeError("cubature carries a " + std::string(to_string(cub.contract.kind)) +
                      " contract, expected " + expect);
  const auto exact = verify_exactness(cub, table, tol.exact_tol);
  json report = {{"command", "verify"},
                 {"input", detail::input_descriptor(moments, table)},
                 {"cubature", cubature},
                 {"contract", io::contract_to_json(cub.contract)},
                 {"tolerances", tol.to_json()}};
  report["exactness"] = detail::exactness_to_json(exact);
  out << report.dump(2) << '\n';
  return exact.passed ? exit_pass : exit_fail;
}

//-----------------------------------------------------------------------------

/// Parses `args` (without the program name) and runs the selected command.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Cubature formulas and normality certificates from complex moments"};
  app.name("hesscub");
  app.require_subcommand(1);

  Tolerances tol;
  auto add_tolerances = [&tol](CLI::App *cmd) {
    cmd->add_option("--normal-tol", tol.normal_tol, "commutator tolerance relative to ||M||^2")
        ->capture_default_str();
    cmd->add_option("--rank-tol", tol.rank_tol, "Gram pivot tolerance relative to s00")
        ->capture_default_str();
    cmd->add_option("--weight-tol", tol.weight_tol, "weight pruning threshold relative to s00")
        ->capture_default_str();
    cmd->add_option("--exact-tol", tol.exact_tol, "exactness tolerance relative to 1 + max|s|")
        ->capture_default_str();
  };

  FixtureArgs fixture;
  auto *fix = app.add_subcommand("fixture", "write a moment table for a named fixture");
  fix->add_option("name", fixture.name, "circle | ngon | dirichlet | atoms")->required();
  fix->add_option("--degree", fixture.degree, "max total degree D")->required();
  fix->add_option("--n", fixture.n, "ngon: number of vertices")->capture_default_str();
  fix->add_option("--a", fixture.a, "dirichlet: interval half-width")->capture_default_str();
  fix->add_option("--count", fixture.count, "atoms: number of atoms")->capture_default_str();
  fix->add_option("--seed", fixture.seed, "atoms: random seed")->capture_default_str();
  fix->add_option("--radius", fixture.radius, "atoms: disk radius")->capture_default_str();
  fix->add_option("--out", fixture.out, "output path (default: stdout)");
  fix->add_option("--atoms-out", fixture.atoms_out, "atoms: sidecar path (default: <out>.atoms.json)");

  std::string moments;
  int d = 0;
  auto *dia = app.add_subcommand("diagnose", "Hessenberg and self-commutator diagnostics");
  dia->add_option("--moments", moments, "moment JSON file")->required();
  dia->add_option("--d", d, "Hessenberg order d")->required();
  add_tolerances(dia);

  QuadratureArgs quad;
  auto *qua = app.add_subcommand("quadrature", "build a gaussian or harmonic cubature");
  qua->add_option("--moments", quad.moments, "moment JSON file")->required();
  qua->add_option("--d", quad.d, "degree d")->required();
  qua->add_option("--mode", quad.mode, "gaussian | harmonic")
      ->required()
      ->check(CLI::IsMember({"gaussian", "harmonic"}));
  qua->add_option("--out", quad.out, "cubature JSON output path");
  qua->add_flag("--force", quad.force, "build a gaussian rule even when the certificate fails");
  add_tolerances(qua);

  std::string cubature, expect;
  auto *ver = app.add_subcommand("verify", "check a cubature against a moment table");
  ver->add_option("--moments", moments, "moment JSON file")->required();
  ver->add_option("--cubature", cubature, "cubature JSON file")->required();
  ver->add_option("--contract", expect, "expected contract kind")
      ->check(CLI::IsMember({"gaussian", "harmonic"}));
  add_tolerances(ver);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForAllHelp &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (*fix)
      return cmd_fixture(fixture, out);
    if (*dia)
      return cmd_diagnose(moments, d, tol, out);
    if (*qua)
      return cmd_quadrature(quad, tol, out);
    return cmd_verify(moments, cubature, expect, tol, out);
  } catch (const IoError &e) {
    err << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const CertificateError &e) {
    err << "error: " << e.what() << '\n';
    return exit_fail;
  } catch (const NumericalError &e) {
    err << "error: " << e.what() << '\n';
    return exit_fail;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

} // namespace hesscub::cli

#endif // HESSCUB_TOOLS_CLI_APP_HPP
