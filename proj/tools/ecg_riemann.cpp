// ecg-riemann: exact Riemann solutions, region classification, limit sweeps,
// finite-volume cross-checks and plots from the command line.
//
// Exit codes: 0 success, 1 sweep did not converge, 2 invalid input,
// 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecg/error.hpp"
#include "ecg/fvcheck.hpp"
#include "ecg/io.hpp"
#include "ecg/limits.hpp"
#include "ecg/models.hpp"
#include "ecg/solver.hpp"
#include "ecg/svg.hpp"

namespace fs = std::filesystem;
using ecg::Error;
using ecg::ErrorKind;
using ecg::io::Json;

namespace {

struct Options {
  std::string file;
  std::optional<std::string> model;
  std::optional<double> A, B, n, alpha;
  std::vector<double> left, right;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  // solve
  double t = 1.0;
  int samples = 0;
  // sweep
  std::optional<std::string> mode;
  std::vector<int> decades;
  std::optional<double> tol;
  // fv
  std::optional<int> cells;
  std::optional<std::string> scheme;
  std::optional<double> t_end, cfl;
  bool refine = false;
  std::optional<double> half_width;
  // plot
  std::string kind = "all";
};

void add_problem_options(CLI::App* sub, Options& o) {
  sub->add_option("--file", o.file, "problem file (JSON)");
  sub->add_option("--model", o.model, "ecg | gcg | transport");
  sub->add_option("--A", o.A, "coefficient A");
  sub->add_option("--B", o.B, "coefficient B");
  sub->add_option("--n", o.n, "exponent n");
  sub->add_option("--alpha", o.alpha, "exponent alpha");
  sub->add_option("--left", o.left, "left state rho,u")->delimiter(',')->expected(2);
  sub->add_option("--right", o.right, "right state rho,u")->delimiter(',')->expected(2);
  sub->add_option("--seed", o.seed, "draw missing left/right states from this seed");
  sub->add_option("--out", o.out, "output directory");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Input, "cannot read problem file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Reproducible random state: rho log-uniform in [0.2, 5], u uniform in [-3, 3].
ecg::State draw_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lr(std::log(0.2), std::log(5.0)), u(-3.0, 3.0);
  const double rho = std::exp(lr(rng));
  return {rho, u(rng)};
}

ecg::io::Problem resolve(const Options& o) {
  ecg::io::Problem pr;
  const bool have_file = !o.file.empty();
  if (!have_file && !o.model) throw Error(ErrorKind::Input, "empty request: give --file or --model");
  if (have_file) pr = ecg::io::parse_problem(read_file(o.file));
  if (o.model) {
    const auto tag = ecg::parse_model(*o.model);
    if (!have_file || tag != pr.model.model) {
      ecg::io::Json blk{{"tag", *o.model}};
      // Flags for the other coefficients are applied below; seed the block so
      // that required keys exist.
      if (o.A || tag == ecg::Model::ECG) blk["A"] = o.A.value_or(0.0);
      if (o.B || tag != ecg::Model::Transport) blk["B"] = o.B.value_or(0.0);
      if (o.n || tag == ecg::Model::ECG) blk["n"] = o.n.value_or(1.0);
      if (o.alpha || tag != ecg::Model::Transport) blk["alpha"] = o.alpha.value_or(1.0);
      pr.model = ecg::io::model_block_from_json(blk);
    }
  }
  if (o.A) pr.model.A = *o.A;
  if (o.B) pr.model.B = *o.B;
  if (o.n) pr.model.n = *o.n;
  if (o.alpha) pr.model.alpha = *o.alpha;
  if (o.left.size() == 2) pr.left = ecg::State{o.left[0], o.left[1]};
  if (o.right.size() == 2) pr.right = ecg::State{o.right[0], o.right[1]};
  if ((!pr.left || !pr.right) && o.seed) {
    std::mt19937_64 rng(*o.seed);
    const auto l = draw_state(rng), r = draw_state(rng);
    if (!pr.left) pr.left = l;
    if (!pr.right) pr.right = r;
  }
  if (!pr.left || !pr.right) throw Error(ErrorKind::Input, "left and right states are required");
  return pr;
}

void emit(const Options& o, const std::string& name, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(o.out);
  std::ofstream f(fs::path(o.out) / name, std::ios::binary);
  if (!f) throw Error(ErrorKind::Input, "cannot write " + (fs::path(o.out) / name).string());
  f << text;
}

void require_format(const std::string& f, std::initializer_list<const char*> ok) {
  for (const char* s : ok)
    if (f == s) return;
  throw Error(ErrorKind::Input, "unsupported --format '" + f + "'");
}

int cmd_solve(const Options& o) {
  const auto pr = resolve(o);
  const std::string fmt = o.format.empty() ? "json" : o.format;
  require_format(fmt, {"json", "csv"});
  if (o.samples < 0) throw Error(ErrorKind::Input, "--samples must be non-negative");
  if (o.samples > 0 && !(o.t > 0.0)) throw Error(ErrorKind::Input, "--t must be positive");
  const auto sol = ecg::solve(pr.model, *pr.left, *pr.right);
  const std::string json = ecg::io::to_json(sol).dump(2) + "\n";
  std::string csv;
  if (o.samples > 0) {
    std::ostringstream ss;
    ecg::io::write_samples_csv(ss, sol, o.t, o.samples);
    csv = ss.str();
  }
  if (o.out.empty()) {
    std::cout << (fmt == "csv" ? csv : json);
  } else {
    emit(o, "solution.json", json);
    if (!csv.empty()) emit(o, "samples.csv", csv);
  }
  return 0;
}

int cmd_classify(const Options& o) {
  const auto pr = resolve(o);
  const std::string fmt = o.format.empty() ? "text" : o.format;
  require_format(fmt, {"text", "json"});
  const auto c = ecg::io::classify(pr.model, *pr.left, *pr.right);
  emit(o, fmt == "json" ? "classification.json" : "classification.txt",
       fmt == "json" ? ecg::io::to_json(c).dump(2) + "\n" : c.region + "\n");
  return 0;
}

int cmd_sweep(const Options& o) {
  auto pr = resolve(o);
  const std::string fmt = o.format.empty() ? "json" : o.format;
  require_format(fmt, {"json", "csv"});
  if (pr.model.model != ecg::Model::ECG) throw Error(ErrorKind::Input, "sweep: the model must be ecg");
  Json block = pr.schedule.value_or(Json::object());
  if (o.mode) block["mode"] = *o.mode;
  if (!o.decades.empty()) {
    if (o.decades.size() != 2) throw Error(ErrorKind::Input, "--decades expects k0,k1");
    block.erase("points");
    block["decades"] = o.decades;
  }
  if (!block.contains("mode")) throw Error(ErrorKind::Input, "sweep: no schedule (give --mode and --decades)");
  const auto sched = ecg::io::make_schedule(block, pr.model);
  const auto& L = *pr.left;
  const auto& R = *pr.right;

  ecg::SweepReport rep;
  if (sched.mode == ecg::ScheduleMode::AVanishes) {
    rep = ecg::run_to_gcg_sweep(L, R, sched, o.tol);
  } else if (L.u > R.u) {
    rep = ecg::run_vanishing_pressure_sweep(L, R, sched, o.tol);
  } else if (L.u < R.u) {
    rep = ecg::run_vacuum_sweep(L, R, sched, o.tol);
  } else {
    throw Error(ErrorKind::Schedule, "sweep: both_vanish needs u- != u+");
  }

  const std::string json = ecg::io::to_json(rep).dump(2) + "\n";
  std::ostringstream csv;
  ecg::io::write_sweep_csv(csv, rep);
  if (o.out.empty()) {
    std::cout << (fmt == "csv" ? csv.str() : json);
  } else {
    emit(o, "sweep.json", json);
    emit(o, "sweep.csv", csv.str());
  }
  return rep.all_converged() ? 0 : 1;
}

int cmd_fv(const Options& o) {
  const auto pr = resolve(o);
  const std::string fmt = o.format.empty() ? "json" : o.format;
  require_format(fmt, {"json", "csv"});
  ecg::GridConfig g = pr.grid.value_or(ecg::GridConfig{});
  if (o.cells) g.cells = *o.cells;
  if (o.scheme) g.scheme = ecg::parse_scheme(*o.scheme);
  if (o.t_end) g.t_end = *o.t_end;
  if (o.cfl) g.cfl = *o.cfl;
  ecg::validate(g);
  const auto& L = *pr.left;
  const auto& R = *pr.right;
  const auto sol = ecg::solve(pr.model, L, R);

  Json rep{{"model", ecg::io::to_json(pr.model)},
           {"left", ecg::io::to_json(L)},
           {"right", ecg::io::to_json(R)},
           {"region", sol.region},
           {"scheme", std::string(ecg::to_string(g.scheme))},
           {"x_lo", g.x_lo},
           {"x_hi", g.x_hi},
           {"cfl", g.cfl},
           {"t_end", g.t_end}};

  if (o.refine) {
    const std::vector<int> cells{g.cells, 2 * g.cells, 4 * g.cells, 8 * g.cells};
    const auto study = ecg::refinement_study(pr.model, L, R, g, cells);
    Json rows = Json::array();
    for (const auto& r : study.rows)
      rows.push_back(Json{{"cells", r.cells},
                          {"l1_rho", r.error.rho},
                          {"l1_momentum", r.error.momentum},
                          {"mass_error", r.mass_error}});
    rep["refinement"] = Json{{"rows", rows}, {"order", study.order}, {"strictly_decreasing", study.strictly_decreasing}};
    if (fmt == "csv") {
      std::ostringstream ss;
      ss << "cells,l1_rho,l1_momentum,mass_error\n";
      for (const auto& r : study.rows) ecg::io::write_csv_row(ss, {double(r.cells), r.error.rho, r.error.momentum, r.mass_error});
      emit(o, "refinement.csv", ss.str());
    } else {
      emit(o, "refinement.json", rep.dump(2) + "\n");
    }
    return 0;
  }

  const auto snap = ecg::evolve(pr.model, L, R, g);
  rep["cells"] = g.cells;
  rep["steps"] = snap.steps;
  rep["max_cfl"] = snap.max_cfl;
  rep["mass_error"] = ecg::mass_conservation_error(snap);
  rep["fallback_interfaces"] = snap.fallback_interfaces;
  rep["notices"] = snap.notices;
  if (sol.delta()) {
    const double hw = o.half_width.value_or(10.0 * snap.dx);
    const auto c = ecg::measure_concentration(snap, sol, hw);
    rep["concentration"] = Json{{"half_width", hw},
                                {"window_mass", c.window_mass},
                                {"baseline_mass", c.baseline_mass},
                                {"excess_mass", c.excess_mass},
                                {"target_weight", c.target_weight},
                                {"relative_error", c.relative_error}};
  } else {
    const auto e = ecg::l1_error(snap, sol);
    rep["l1_rho"] = e.rho;
    rep["l1_momentum"] = e.momentum;
  }
  for (const auto& n : snap.notices) std::cerr << "notice: " << n << "\n";

  std::ostringstream csv;
  ecg::io::write_snapshot_csv(csv, snap, pr.model);
  if (o.out.empty()) {
    std::cout << (fmt == "csv" ? csv.str() : rep.dump(2) + "\n");
  } else {
    emit(o, "fv.json", rep.dump(2) + "\n");
    emit(o, "snapshot.csv", csv.str());
  }
  return 0;
}

int cmd_plot(const Options& o) {
  const auto pr = resolve(o);
  if (!o.format.empty() && o.format != "svg") throw Error(ErrorKind::Input, "plot: only --format svg");
  if (o.kind != "all" && o.kind != "profile" && o.kind != "phase")
    throw Error(ErrorKind::Input, "plot: --kind must be all, profile or phase");
  const auto sol = ecg::solve(pr.model, *pr.left, *pr.right);
  Options where = o;
  if (where.out.empty()) where.out = ".";
  if (o.kind != "phase") {
    const auto [rho, u] = ecg::svg::profile_plots(sol);
    emit(where, "profile_rho.svg", ecg::svg::render(rho));
    emit(where, "profile_u.svg", ecg::svg::render(u));
  }
  if (o.kind != "profile") emit(where, "phase.svg", ecg::svg::render(ecg::svg::phase_plot(sol)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Riemann solver for the extended Chaplygin gas"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "solve a Riemann problem");
  add_problem_options(solve, o);
  solve->add_option("--t", o.t, "sample time");
  solve->add_option("--samples", o.samples, "number of CSV samples");
  solve->add_option("--format", o.format, "json | csv");

  auto* classify = app.add_subcommand("classify", "print the region of the data");
  add_problem_options(classify, o);
  classify->add_option("--format", o.format, "text | json");

  auto* sweep = app.add_subcommand("sweep", "vanishing-coefficient sweep");
  add_problem_options(sweep, o);
  sweep->add_option("--mode", o.mode, "both_vanish | a_vanishes");
  sweep->add_option("--decades", o.decades, "k0,k1")->delimiter(',');
  sweep->add_option("--tol", o.tol, "convergence threshold");
  sweep->add_option("--format", o.format, "json | csv");

  auto* fv = app.add_subcommand("fv", "finite-volume cross-check");
  add_problem_options(fv, o);
  fv->add_option("--cells", o.cells, "number of cells");
  fv->add_option("--scheme", o.scheme, "godunov | lax_friedrichs | local_lax_friedrichs");
  fv->add_option("--t", o.t_end, "final time");
  fv->add_option("--cfl", o.cfl, "CFL number");
  fv->add_flag("--refine", o.refine, "run 1x, 2x, 4x, 8x grids and report the order");
  fv->add_option("--half-width", o.half_width, "concentration window half-width");
  fv->add_option("--format", o.format, "json | csv");

  auto* plot = app.add_subcommand("plot", "write SVG plots");
  add_problem_options(plot, o);
  plot->add_option("--kind", o.kind, "all | profile | phase");
  plot->add_option("--format", o.format, "svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(o);
    if (classify->parsed()) return cmd_classify(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (fv->parsed()) return cmd_fv(o);
    if (plot->parsed()) return cmd_plot(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ecg::is_input_error(e.kind()) ? 2 : 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
