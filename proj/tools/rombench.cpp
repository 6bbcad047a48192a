// Copyright (c) 2026 krom developers
// SPDX-License-Identifier: Apache-2.0
//
// Benchmark harness: runs the solver experiments from a config file or CLI
// flags and writes CSV tables plus a JSON run manifest.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "krom/assembly.hpp"
#include "krom/krylov.hpp"
#include "krom/mesh.hpp"
#include "krom/pipeline.hpp"
#include "krom/rom.hpp"
#include "krom/sources.hpp"
#include "krom/spla.hpp"

using namespace krom;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Options {
  std::string experiment;
  std::string config_path;
  std::string out_dir = ".";
  int dim = 2;
  int degree = 1;
  int level_lo = 4;
  int level_hi = 7;
  int ell = 0;          // 0 = experiment default
  double tol = -1.0;    // rank tolerance; < 0 = experiment default
  double tol_svd = -1.0;
  std::string dt_rule;  // "h" | "h^(k+1)/2"
  std::string source = "poly4";
  std::string path = "isvd";  // convergence basis path: isvd | eig
  int m = 8;
  double final_time = 1.0;
  int eig_count = 4;
  int dense_cap = 5000;
  std::string dump_mesh;
  std::string trajectory_csv;
  std::string coeffs_csv;
};

[[noreturn]] void fail(const std::string& phase, const std::string& message) {
  throw std::runtime_error("phase " + phase + ": " + message);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

void parse_levels(const std::string& text, int& lo, int& hi) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    lo = hi = std::stoi(text);
    return;
  }
  lo = std::stoi(text.substr(0, dots));
  hi = std::stoi(text.substr(dots + 2));
  if (hi < lo) fail("config", "levels range is empty: " + text);
}

// flat key=value file with '#' comments
void apply_config_file(Options& opt) {
  std::ifstream in(opt.config_path);
  if (!in) fail("config", "cannot open config file " + opt.config_path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail("config", "line " + std::to_string(lineno) + " is not key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "experiment") {
      if (!opt.experiment.empty() && value != opt.experiment)
        fail("config", "config experiment '" + value + "' does not match subcommand '" +
                           opt.experiment + "'");
    } else if (key == "dim") {
      opt.dim = std::stoi(value);
    } else if (key == "degree") {
      opt.degree = std::stoi(value);
    } else if (key == "levels") {
      parse_levels(value, opt.level_lo, opt.level_hi);
    } else if (key == "ell") {
      opt.ell = std::stoi(value);
    } else if (key == "tol" || key == "tol_rank") {
      opt.tol = std::stod(value);
    } else if (key == "tol_svd") {
      opt.tol_svd = std::stod(value);
    } else if (key == "dt_rule") {
      opt.dt_rule = value;
    } else if (key == "source") {
      opt.source = value;
    } else if (key == "path") {
      opt.path = value;
    } else if (key == "m") {
      opt.m = std::stoi(value);
    } else if (key == "T") {
      opt.final_time = std::stod(value);
    } else if (key == "out") {
      opt.out_dir = value;
    } else if (key == "eig_count") {
      opt.eig_count = std::stoi(value);
    } else if (key == "dense_cap") {
      opt.dense_cap = std::stoi(value);
    } else {
      fail("config", "unknown key '" + key + "'");
    }
  }
}

DtRule parse_dt_rule(const std::string& text, DtRule fallback) {
  if (text.empty()) return fallback;
  if (text == "h") return DtRule::equal_h;
  if (text == "h^(k+1)/2") return DtRule::h_pow_half_kp1;
  fail("config", "unknown dt rule '" + text + "' (expected h or h^(k+1)/2)");
}

std::string csv_path(const Options& opt, const std::string& name) {
  return opt.out_dir + "/" + name + ".csv";
}

std::ofstream open_csv(const Options& opt, const std::string& name) {
  std::ofstream out(csv_path(opt, name));
  if (!out) fail("output", "cannot write to " + csv_path(opt, name));
  out.precision(17);
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Assembled {
  FemSpace space;
  SparseMat M, A;
  double assemble_seconds = 0.0;
};

Assembled assemble_level(const Options& opt, int level) {
  const auto t0 = Clock::now();
  Assembled out{make_space(build_mesh(opt.dim, level), opt.degree), {}, {}, 0.0};
  auto ops = assemble_operators(out.space);
  out.M = std::move(ops.mass);
  out.A = std::move(ops.stiffness);
  out.assemble_seconds = seconds_since(t0);
  return out;
}

double l2_norm(const SparseMat& M, const Vec& v) { return std::sqrt(std::max(0.0, v.dot(M * v))); }

void maybe_dump_mesh(const Options& opt, const Mesh& mesh) {
  if (opt.dump_mesh.empty()) return;
  std::ofstream out(opt.dump_mesh);
  if (!out) fail("output", "cannot write mesh dump to " + opt.dump_mesh);
  dump_mesh(mesh, out);
}

void write_trajectory_csv(const Options& opt, const SparseMat& M, const Mat& Q,
                          const Mat& alphas, TimeGrid grid) {
  if (!opt.trajectory_csv.empty()) {
    std::ofstream out(opt.trajectory_csv);
    if (!out) fail("output", "cannot write trajectory to " + opt.trajectory_csv);
    out.precision(17);
    out << "n,t,l2_norm\n";
    for (int n = 0; n < alphas.cols(); ++n) {
      const Vec lifted = Q * alphas.col(n);
      out << n << ',' << n * grid.dt() << ',' << l2_norm(M, lifted) << '\n';
    }
  }
  if (!opt.coeffs_csv.empty()) {
    // full lifted coefficient dump, one checkpoint per row
    std::ofstream out(opt.coeffs_csv);
    if (!out) fail("output", "cannot write coefficients to " + opt.coeffs_csv);
    out.precision(17);
    for (int n = 0; n < alphas.cols(); ++n) {
      const Vec lifted = Q * alphas.col(n);
      out << n << ',' << n * grid.dt();
      for (Eigen::Index i = 0; i < lifted.size(); ++i) out << ',' << lifted[i];
      out << '\n';
    }
  }
}

json environment_json() {
  json env;
  env["compiler"] = __VERSION__;
  env["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                 "." + std::to_string(EIGEN_MINOR_VERSION);
#ifdef _OPENMP
  env["openmp"] = _OPENMP;
#else
  env["openmp"] = false;
#endif
  return env;
}

json config_json(const Options& opt) {
  json c;
  c["experiment"] = opt.experiment;
  c["dim"] = opt.dim;
  c["degree"] = opt.degree;
  c["levels"] = {opt.level_lo, opt.level_hi};
  c["ell"] = opt.ell;
  c["tol"] = opt.tol;
  c["tol_svd"] = opt.tol_svd;
  c["dt_rule"] = opt.dt_rule;
  c["source"] = opt.source;
  c["path"] = opt.path;
  c["m"] = opt.m;
  c["T"] = opt.final_time;
  c["eig_count"] = opt.eig_count;
  c["dense_cap"] = opt.dense_cap;
  return c;
}

void write_manifest(const Options& opt, const json& rows, double total_seconds) {
  json manifest;
  manifest["config"] = config_json(opt);
  manifest["environment"] = environment_json();
  json levels = json::array();
  for (int level = opt.level_lo; level <= opt.level_hi; ++level) {
    const double spacing = std::pow(2.0, -level);
    levels.push_back({{"level", level},
                      {"h_over_sqrt2", spacing},
                      {"h_max_diameter", spacing * std::sqrt(opt.dim == 2 ? 2.0 : 3.0)}});
  }
  manifest["mesh_levels"] = levels;
  manifest["rows"] = rows;
  manifest["wall_seconds_total"] = total_seconds;
  std::ofstream out(opt.out_dir + "/manifest.json");
  if (!out) fail("output", "cannot write manifest to " + opt.out_dir);
  out << manifest.dump(2) << '\n';
}

ProblemData poly4_problem(const FemSpace& space) {
  ProblemData data;
  data.source = build_source_exact({[](double) { return 1.0; }},
                                   {assemble_load(space, poly4_source())});
  return data;
}

// ---------------------------------------------------------------------------

int run_fom_timing(Options opt) {
  const auto t_total = Clock::now();
  if (opt.ell == 0) opt.ell = 10;
  auto csv = open_csv(opt, "fom_timing");
  csv << "level,h_over_sqrt2,n_dofs,n_steps,assemble_seconds,wall_seconds\n";
  json rows = json::array();
  for (int level = opt.level_lo; level <= opt.level_hi; ++level) {
    const Assembled sys = assemble_level(opt, level);
    if (level == opt.level_lo) maybe_dump_mesh(opt, sys.space.mesh);
    const ProblemData data = poly4_problem(sys.space);
    const TimeGrid grid =
        make_time_grid(sys.space, parse_dt_rule(opt.dt_rule, DtRule::equal_h), opt.final_time);
    const auto t0 = Clock::now();
    const Trajectory traj = solve_fom(sys.M, sys.A, data, grid);
    const double wall = seconds_since(t0);
    (void)traj;
    csv << level << ',' << fmt(std::pow(2.0, -level)) << ',' << sys.space.n_dofs << ','
        << grid.n_steps << ',' << fmt(sys.assemble_seconds) << ',' << fmt(wall) << '\n';
    rows.push_back({{"level", level},
                    {"n_dofs", sys.space.n_dofs},
                    {"n_steps", grid.n_steps},
                    {"assemble_seconds", sys.assemble_seconds},
                    {"wall_seconds", wall}});
    std::printf("fom-timing level %d: n=%d steps=%d wall=%.3f s\n", level, sys.space.n_dofs,
                grid.n_steps, wall);
  }
  write_manifest(opt, rows, seconds_since(t_total));
  return 0;
}

int run_rom_accuracy(Options opt) {
  const auto t_total = Clock::now();
  if (opt.ell == 0) opt.ell = 10;
  if (opt.tol < 0) opt.tol = 1e-14;
  auto csv = open_csv(opt, "rom_accuracy");
  csv << "level,h_over_sqrt2,r,n_steps,fom_seconds,rom_seconds,l2_gap\n";
  json rows = json::array();
  for (int level = opt.level_lo; level <= opt.level_hi; ++level) {
    const Assembled sys = assemble_level(opt, level);
    const ProblemData data = poly4_problem(sys.space);
    PipelineConfig cfg;
    cfg.path = BasisPath::adaptive;
    cfg.ell = opt.ell;
    cfg.tol_rank = opt.tol;
    cfg.dt_rule = parse_dt_rule(opt.dt_rule, DtRule::equal_h);
    cfg.final_time = opt.final_time;
    const PipelineResult rom = solve_rom_pipeline(sys.space, sys.M, sys.A, data, cfg);
    const auto t0 = Clock::now();
    const Trajectory fom = solve_fom(sys.M, sys.A, data, rom.grid);
    const double fom_seconds = seconds_since(t0);
    const Vec diff = fom.final - rom.Q * Vec(rom.trajectory.rightCols(1));
    const double gap = l2_norm(sys.M, diff);
    csv << level << ',' << fmt(std::pow(2.0, -level)) << ',' << rom.rank << ','
        << rom.grid.n_steps << ',' << fmt(fom_seconds) << ',' << fmt(rom.seconds.total) << ','
        << fmt(gap) << '\n';
    rows.push_back({{"level", level},
                    {"r", rom.rank},
                    {"n_steps", rom.grid.n_steps},
                    {"fom_seconds", fom_seconds},
                    {"rom_seconds", rom.seconds.total},
                    {"rom_phase_seconds",
                     {{"basis", rom.seconds.basis},
                      {"reduce", rom.seconds.reduce},
                      {"integrate", rom.seconds.integrate}}},
                    {"l2_gap", gap}});
    std::printf("rom-accuracy level %d: r=%d gap=%.3e fom=%.3f s rom=%.3f s\n", level, rom.rank,
                gap, fom_seconds, rom.seconds.total);
    if (level == opt.level_hi)
      write_trajectory_csv(opt, sys.M, rom.Q, rom.trajectory, rom.grid);
  }
  write_manifest(opt, rows, seconds_since(t_total));
  return 0;
}

int run_convergence(Options opt) {
  const auto t_total = Clock::now();
  if (opt.ell == 0) opt.ell = 5;
  if (opt.tol < 0) opt.tol = 1e-10;
  if (opt.tol_svd < 0) opt.tol_svd = 1e-10;
  const ManufacturedSolution ms = manufactured_solution(opt.dim);
  auto csv = open_csv(opt, "convergence");
  csv << "level,h_over_sqrt2,n_dofs,r,l2_error,l2_rate,h1_error,h1_rate,wall_seconds\n";
  json rows = json::array();
  double prev_l2 = 0.0, prev_h1 = 0.0;
  for (int level = opt.level_lo; level <= opt.level_hi; ++level) {
    const auto t0 = Clock::now();
    const Assembled sys = assemble_level(opt, level);
    ProblemData data;
    data.source = build_source_chebyshev(sys.space, ms.f, opt.m, opt.final_time);
    PipelineConfig cfg;
    cfg.path = opt.path == "eig" ? BasisPath::block_eig : BasisPath::block_isvd;
    cfg.ell = opt.ell;
    cfg.tol_rank = opt.tol;
    cfg.tol_svd = opt.tol_svd;
    cfg.dt_rule = parse_dt_rule(opt.dt_rule, DtRule::h_pow_half_kp1);
    cfg.final_time = opt.final_time;
    const PipelineResult rom = solve_rom_pipeline(sys.space, sys.M, sys.A, data, cfg);
    const Vec uh = rom.Q * Vec(rom.trajectory.rightCols(1));
    const double T = opt.final_time;
    const auto norms = error_norms(
        sys.space, uh, [&](const Point& p) { return ms.u(T, p); },
        [&](const Point& p) { return ms.grad_u(T, p); });
    const double wall = seconds_since(t0);
    // rates are only meaningful above the noise floor
    std::string l2_rate = "-", h1_rate = "-";
    if (level > opt.level_lo) {
      if (prev_l2 > 1e-13 && norms.l2 > 1e-13) l2_rate = fmt(std::log2(prev_l2 / norms.l2));
      if (prev_h1 > 1e-13 && norms.h1_semi > 1e-13)
        h1_rate = fmt(std::log2(prev_h1 / norms.h1_semi));
    }
    csv << level << ',' << fmt(std::pow(2.0, -level)) << ',' << sys.space.n_dofs << ','
        << rom.rank << ',' << fmt(norms.l2) << ',' << l2_rate << ',' << fmt(norms.h1_semi) << ','
        << h1_rate << ',' << fmt(wall) << '\n';
    rows.push_back({{"level", level},
                    {"n_dofs", sys.space.n_dofs},
                    {"r", rom.rank},
                    {"l2_error", norms.l2},
                    {"h1_error", norms.h1_semi},
                    {"wall_seconds", wall}});
    std::printf("convergence level %d: r=%d l2=%.4e (rate %s) h1=%.4e (rate %s) %.2f s\n", level,
                rom.rank, norms.l2, l2_rate.c_str(), norms.h1_semi, h1_rate.c_str(), wall);
    prev_l2 = norms.l2;
    prev_h1 = norms.h1_semi;
  }
  write_manifest(opt, rows, seconds_since(t_total));
  return 0;
}

int run_decay(Options opt) {
  const auto t_total = Clock::now();
  if (opt.ell == 0) opt.ell = 8;
  if (opt.level_lo == 4 && opt.level_hi == 7) opt.level_lo = opt.level_hi = 6;
  const int level = opt.level_hi;
  const Assembled sys = assemble_level(opt, level);
  const Vec b = assemble_load(sys.space, poly4_source());
  const SpdSolver solver(sys.A);
  const Mat U = krylov_sequence(solver, sys.M, b, opt.ell);
  Mat K = U.transpose() * (sys.A * U);
  K = 0.5 * (K + K.transpose());
  const SymEig eig = sym_eig(K);
  const auto records = decay_report(eig.values);
  auto csv = open_csv(opt, "decay");
  write_decay_csv(records, csv);
  json rows = json::array();
  for (const auto& rec : records) {
    rows.push_back({{"index", rec.index},
                    {"eigenvalue", rec.eigenvalue},
                    {"within_bound", rec.within_bound}});
    std::printf("decay index %d: lambda=%.6e ratio=%.3e bound_ok=%s\n", rec.index, rec.eigenvalue,
                rec.ratio, rec.within_bound ? "yes" : "no");
  }
  write_manifest(opt, rows, seconds_since(t_total));
  return 0;
}

int run_exactness(Options opt) {
  const auto t_total = Clock::now();
  if (opt.ell == 0) opt.ell = 8;
  // The low-rank-source equality needs an exactly repeated discrete
  // eigenvalue pair. The tetrahedral mesh is invariant under all coordinate
  // permutations, which forces true two-fold degeneracies (the two-triangle
  // 2D mesh only has abelian symmetries and splits every continuum pair).
  opt.dim = 3;
  if (opt.level_lo == 4 && opt.level_hi == 7) opt.level_lo = opt.level_hi = 3;
  const int level = std::min(opt.level_hi, 4);
  const Assembled sys = assemble_level(opt, level);
  const auto pairs = discrete_eigenpairs(sys.M, sys.A, opt.eig_count, opt.dense_cap);
  if (opt.eig_count >= 3) {
    const double split = std::abs(pairs[2].value - pairs[1].value) / pairs[2].value;
    if (split > 1e-12)
      fail("exactness", "expected a repeated eigenvalue pair, got relative split " + fmt(split));
  }
  Vec f_coeffs = Vec::Zero(sys.space.n_dofs);
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const double c = 1.0 + 0.5 * static_cast<double>(j);
    f_coeffs += c * pairs[j].vector;
  }
  const Vec b = sys.M * f_coeffs;
  ProblemData data;
  data.source = build_source_exact({[](double) { return 1.0; }}, {b});
  PipelineConfig cfg;
  cfg.path = BasisPath::adaptive;
  cfg.ell = opt.ell;
  cfg.tol_rank = opt.tol < 0 ? 0.0 : opt.tol;
  cfg.dt_rule = parse_dt_rule(opt.dt_rule, DtRule::equal_h);
  cfg.final_time = opt.final_time;
  const PipelineResult rom = solve_rom_pipeline(sys.space, sys.M, sys.A, data, cfg);
  const Trajectory fom = solve_fom(sys.M, sys.A, data, rom.grid, /*keep_all=*/true);

  auto csv = open_csv(opt, "exactness");
  csv << "n,t,fom_l2,rom_l2,gap_l2\n";
  double max_gap = 0.0, max_norm = 0.0;
  json rows = json::array();
  for (int n = 0; n <= rom.grid.n_steps; ++n) {
    const Vec uf = fom.states.col(n);
    const Vec ur = rom.Q * rom.trajectory.col(n);
    const double gap = l2_norm(sys.M, uf - ur);
    max_gap = std::max(max_gap, gap);
    max_norm = std::max(max_norm, l2_norm(sys.M, uf));
    csv << n << ',' << fmt(n * rom.grid.dt()) << ',' << fmt(l2_norm(sys.M, uf)) << ','
        << fmt(l2_norm(sys.M, ur)) << ',' << fmt(gap) << '\n';
  }
  const double rel = max_gap / max_norm;
  rows.push_back({{"level", level},
                  {"r", rom.rank},
                  {"max_gap", max_gap},
                  {"max_norm", max_norm},
                  {"relative_gap", rel}});
  std::printf("exactness level %d: r=%d max-over-time relative gap = %.3e\n", level, rom.rank,
              rel);
  write_manifest(opt, rows, seconds_since(t_total));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krylov reduced-order-model benchmark harness"};
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "flat key = value config file");
    sub->add_option("--out", opt.out_dir, "output directory for CSV + manifest");
    sub->add_option("--dim", opt.dim, "spatial dimension (2 or 3)");
    sub->add_option("--degree", opt.degree, "polynomial degree (1 or 2)");
    sub->add_option("--levels", [&](const std::vector<std::string>& v) {
      parse_levels(v.back(), opt.level_lo, opt.level_hi);
      return true;
    }, "refinement levels, e.g. 4..7");
    sub->add_option("--ell", opt.ell, "Krylov depth");
    sub->add_option("--tol", opt.tol, "rank tolerance");
    sub->add_option("--tol-svd", opt.tol_svd, "SVD truncation tolerance");
    sub->add_option("--dt-rule", opt.dt_rule, "h or h^(k+1)/2");
    sub->add_option("--source", opt.source, "builtin source id");
    sub->add_option("--path", opt.path, "convergence basis path: isvd or eig");
    sub->add_option("--m", opt.m, "number of Chebyshev samples");
    sub->add_option("--T", opt.final_time, "final time");
    sub->add_option("--eig-count", opt.eig_count, "eigenfunctions in the exactness source");
    sub->add_option("--dense-cap", opt.dense_cap, "dense-oracle size cap");
    sub->add_option("--dump-mesh", opt.dump_mesh, "write a plain-text mesh dump");
    sub->add_option("--trajectory", opt.trajectory_csv, "write the ROM trajectory norms CSV");
    sub->add_option("--dump-coeffs", opt.coeffs_csv, "write full coefficients per checkpoint");
  };

  auto* fom = app.add_subcommand("fom-timing", "time the full-order solves per level");
  auto* acc = app.add_subcommand("rom-accuracy", "FOM vs ROM dimension and final-time gap");
  auto* conv = app.add_subcommand("convergence", "manufactured-solution error table");
  auto* decay = app.add_subcommand("decay", "Gram-matrix eigenvalue decay report");
  auto* exact = app.add_subcommand("exactness", "low-rank-source FOM/ROM equality test");
  for (auto* sub : {fom, acc, conv, decay, exact}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* active = nullptr;
    if (app.got_subcommand(fom)) active = fom, opt.experiment = "fom-timing";
    if (app.got_subcommand(acc)) active = acc, opt.experiment = "rom-accuracy";
    if (app.got_subcommand(conv)) active = conv, opt.experiment = "convergence";
    if (app.got_subcommand(decay)) active = decay, opt.experiment = "decay";
    if (app.got_subcommand(exact)) active = exact, opt.experiment = "exactness";
    if (!opt.config_path.empty()) {
      const Options cli = opt;  // values as given on the command line
      apply_config_file(opt);
      // explicit flags win over file values
      if (active->count("--dim")) opt.dim = cli.dim;
      if (active->count("--degree")) opt.degree = cli.degree;
      if (active->count("--levels")) {
        opt.level_lo = cli.level_lo;
        opt.level_hi = cli.level_hi;
      }
      if (active->count("--ell")) opt.ell = cli.ell;
      if (active->count("--tol")) opt.tol = cli.tol;
      if (active->count("--tol-svd")) opt.tol_svd = cli.tol_svd;
      if (active->count("--dt-rule")) opt.dt_rule = cli.dt_rule;
      if (active->count("--source")) opt.source = cli.source;
      if (active->count("--path")) opt.path = cli.path;
      if (active->count("--m")) opt.m = cli.m;
      if (active->count("--T")) opt.final_time = cli.final_time;
      if (active->count("--eig-count")) opt.eig_count = cli.eig_count;
      if (active->count("--dense-cap")) opt.dense_cap = cli.dense_cap;
      if (active->count("--out")) opt.out_dir = cli.out_dir;
    }
    if (opt.experiment == "fom-timing") return run_fom_timing(opt);
    if (opt.experiment == "rom-accuracy") return run_rom_accuracy(opt);
    if (opt.experiment == "convergence") return run_convergence(opt);
    if (opt.experiment == "decay") return run_decay(opt);
    if (opt.experiment == "exactness") return run_exactness(opt);
    std::cerr << "rombench: no experiment selected\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rombench: error: " << e.what() << '\n';
    return 1;
  }
}
