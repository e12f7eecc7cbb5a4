#pragma once

// First-order finite-volume evolution of Riemann data (Godunov with the exact
// solvers, or Lax-Friedrichs), exact-solution comparison, and delta-shock
// mass concentration measurements.

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "ecg/error.hpp"
#include "ecg/models.hpp"
#include "ecg/solver.hpp"

namespace ecg {

/// LocalLaxFriedrichs (Rusanov) scales the dissipation by the local signal
/// speed instead of dx / dt, which keeps forming delta shocks a few cells wide.
enum class Scheme { GodunovExact, LaxFriedrichs, LocalLaxFriedrichs };

constexpr std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::GodunovExact: return "godunov";
    case Scheme::LaxFriedrichs: return "lax_friedrichs";
    case Scheme::LocalLaxFriedrichs: return "local_lax_friedrichs";
  }
  return "?";
}

inline Scheme parse_scheme(std::string_view s) {
  if (s == "godunov") return Scheme::GodunovExact;
  if (s == "lax_friedrichs") return Scheme::LaxFriedrichs;
  if (s == "local_lax_friedrichs") return Scheme::LocalLaxFriedrichs;
  throw Error(ErrorKind::Input, "unknown scheme '" + std::string(s) + "'");
}

struct GridConfig {
  double x_lo = -1.0;
  double x_hi = 1.0;
  int cells = 400;
  double cfl = 0.9;
  double t_end = 0.2;
  Scheme scheme = Scheme::GodunovExact;
  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

inline void validate(const GridConfig& g) {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidParams, "GridConfig: " + why); };
  if (!(g.x_lo < 0.0 && 0.0 < g.x_hi)) fail("requires x_lo < 0 < x_hi");
  if (g.cells < 10) fail("requires cells >= 10");
  if (!(g.cfl > 0.0 && g.cfl <= 0.9)) fail("requires 0 < cfl <= 0.9");
  if (!(g.t_end > 0.0) || !std::isfinite(g.t_end)) fail("requires t_end > 0");
}

struct Conserved {
  double rho = 0.0;
  double m = 0.0;
  friend bool operator==(const Conserved&, const Conserved&) = default;
};

struct FieldSnapshot {
  double time = 0.0;
  double dx = 0.0;
  std::vector<double> x;  // cell centers
  std::vector<Conserved> cells;
  int steps = 0;
  double max_cfl = 0.0;
  double initial_mass = 0.0;
  double initial_momentum = 0.0;
  double mass_inflow = 0.0;      // accumulated boundary flux, integrated in time
  double momentum_inflow = 0.0;
  double max_step_mass_defect = 0.0;      // relative, per step
  double max_step_momentum_defect = 0.0;  // relative, per step
  int fallback_interfaces = 0;            // Godunov interfaces evaluated with LF
  std::vector<std::string> notices;
};

namespace detail {

inline double kahan_sum(const std::vector<double>& v) {
  double s = 0.0, c = 0.0;
  for (double x : v) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

inline double total_mass(const std::vector<Conserved>& u, double dx) {
  std::vector<double> v;
  v.reserve(u.size());
  for (const auto& c : u) v.push_back(c.rho * dx);
  return kahan_sum(v);
}

inline double total_momentum(const std::vector<Conserved>& u, double dx) {
  std::vector<double> v;
  v.reserve(u.size());
  for (const auto& c : u) v.push_back(c.m * dx);
  return kahan_sum(v);
}

inline bool is_vacuum(const Conserved& c) { return c.rho < kDensityFloor; }

inline State primitive(const Conserved& c) { return is_vacuum(c) ? State{0.0, 0.0} : State{c.rho, c.m / c.rho}; }

inline Conserved physical_flux(const PressureParams& p, const Conserved& c) {
  if (is_vacuum(c)) return {0.0, 0.0};
  const double u = c.m / c.rho;
  return {c.m, c.m * u + pressure(p, c.rho)};
}

inline double max_signal_speed(const PressureParams& p, const Conserved& c) {
  if (is_vacuum(c)) return 0.0;
  const auto e = eigenvalues(p, primitive(c));
  return std::max(std::abs(e.lambda1), std::abs(e.lambda2));
}

inline Conserved lax_friedrichs_flux(const PressureParams& p, const Conserved& l, const Conserved& r,
                                     double dx_over_dt) {
  const auto fl = physical_flux(p, l), fr = physical_flux(p, r);
  return {0.5 * (fl.rho + fr.rho) - 0.5 * dx_over_dt * (r.rho - l.rho),
          0.5 * (fl.m + fr.m) - 0.5 * dx_over_dt * (r.m - l.m)};
}

inline Conserved rusanov_flux(const PressureParams& p, const Conserved& l, const Conserved& r) {
  const auto fl = physical_flux(p, l), fr = physical_flux(p, r);
  const double a = std::max(max_signal_speed(p, l), max_signal_speed(p, r));
  return {0.5 * (fl.rho + fr.rho) - 0.5 * a * (r.rho - l.rho), 0.5 * (fl.m + fr.m) - 0.5 * a * (r.m - l.m)};
}

/// Largest |xi| of any wave in the Riemann solution.
inline double solution_reach(const RiemannSolution& sol) {
  double s = 0.0;
  for (const auto& seg : sol.segments) {
    if (std::isfinite(seg.xi_lo)) s = std::max(s, std::abs(seg.xi_lo));
    if (std::isfinite(seg.xi_hi)) s = std::max(s, std::abs(seg.xi_hi));
  }
  return s;
}

}  // namespace detail

/// Godunov flux from the exact solution sampled at xi = 0. Returns false
/// when the interface problem carries a delta shock or touches vacuum, in
/// which case the caller substitutes the Lax-Friedrichs flux.
inline bool godunov_flux(const PressureParams& p, const Conserved& l, const Conserved& r, Conserved& flux) {
  if (l == r) {
    flux = detail::physical_flux(p, l);
    return true;
  }
  if (detail::is_vacuum(l) || detail::is_vacuum(r)) return false;
  const auto sol = solve(p, detail::primitive(l), detail::primitive(r));
  if (sol.delta()) return false;
  const auto s = sample(sol, 0.0);
  if (s.in_vacuum) {
    flux = {0.0, 0.0};
    return true;
  }
  const State& q = s.state;
  flux = {q.rho * q.u, q.rho * q.u * q.u + pressure(p, q.rho)};
  return true;
}

inline FieldSnapshot evolve(const PressureParams& p, const State& left, const State& right, const GridConfig& g) {
  validate(p);
  validate(g);
  detail::require_density(left.rho, "evolve");
  detail::require_density(right.rho, "evolve");

  const auto exact = solve(p, left, right);
  const double reach = detail::solution_reach(exact);
  const double margin = std::min(-g.x_lo, g.x_hi);
  if (reach * g.t_end >= margin) {
    std::ostringstream os;
    os.precision(17);
    os << "evolve: waves reach |x| = " << reach * g.t_end << " by t_end, beyond the domain half-width " << margin;
    throw Error(ErrorKind::DomainTooSmall, os.str());
  }

  const int N = g.cells;
  FieldSnapshot snap;
  snap.dx = (g.x_hi - g.x_lo) / N;
  snap.x.resize(N);
  snap.cells.resize(N);
  for (int i = 0; i < N; ++i) {
    snap.x[i] = g.x_lo + (i + 0.5) * snap.dx;
    const State& s = snap.x[i] < 0.0 ? left : right;
    snap.cells[i] = {s.rho, s.rho * s.u};
  }
  // A cell straddling x = 0 gets the exact average of the two states.
  for (int i = 0; i < N; ++i) {
    const double a = snap.x[i] - 0.5 * snap.dx, b = snap.x[i] + 0.5 * snap.dx;
    if (a < 0.0 && 0.0 < b) {
      const double wl = -a / snap.dx, wr = b / snap.dx;
      snap.cells[i] = {wl * left.rho + wr * right.rho, wl * left.rho * left.u + wr * right.rho * right.u};
    }
  }
  const double dx = snap.dx;
  snap.initial_mass = detail::total_mass(snap.cells, dx);
  snap.initial_momentum = detail::total_momentum(snap.cells, dx);

  std::vector<Conserved> flux(N + 1);
  std::vector<Conserved> next(N);
  double t = 0.0;
  while (t < g.t_end) {
    double smax = 0.0;
    for (const auto& c : snap.cells) smax = std::max(smax, detail::max_signal_speed(p, c));
    double dt = smax > 0.0 ? g.cfl * dx / smax : g.t_end - t;
    if (t + dt > g.t_end) dt = g.t_end - t;
    if (!(dt > 0.0)) break;
    snap.max_cfl = std::max(snap.max_cfl, dt * smax / dx);
    const double dx_over_dt = dx / dt;

    // Outflow boundaries: ghost cells copy the edge cells.
    for (int f = 0; f <= N; ++f) {
      const Conserved& l = snap.cells[std::max(f - 1, 0)];
      const Conserved& r = snap.cells[std::min(f, N - 1)];
      if (g.scheme == Scheme::GodunovExact) {
        if (!godunov_flux(p, l, r, flux[f])) {
          flux[f] = detail::lax_friedrichs_flux(p, l, r, dx_over_dt);
          ++snap.fallback_interfaces;
        }
      } else if (l == r) {
        flux[f] = detail::physical_flux(p, l);
      } else if (g.scheme == Scheme::LaxFriedrichs) {
        flux[f] = detail::lax_friedrichs_flux(p, l, r, dx_over_dt);
      } else {
        flux[f] = detail::rusanov_flux(p, l, r);
      }
    }

    const double mass_before = detail::total_mass(snap.cells, dx);
    const double mom_before = detail::total_momentum(snap.cells, dx);
    const double lam = dt / dx;
    for (int i = 0; i < N; ++i) {
      next[i] = {snap.cells[i].rho - lam * (flux[i + 1].rho - flux[i].rho),
                 snap.cells[i].m - lam * (flux[i + 1].m - flux[i].m)};
      if (next[i].rho < 0.0 || !std::isfinite(next[i].rho) || !std::isfinite(next[i].m)) {
        std::ostringstream os;
        os.precision(17);
        os << "evolve: cell " << i << " at x = " << snap.x[i] << " has density " << next[i].rho << " at t = " << t + dt;
        throw Error(ErrorKind::Positivity, os.str());
      }
    }
    snap.cells.swap(next);
    const double in_mass = dt * (flux[0].rho - flux[N].rho);
    const double in_mom = dt * (flux[0].m - flux[N].m);
    snap.mass_inflow += in_mass;
    snap.momentum_inflow += in_mom;
    const double mass_after = detail::total_mass(snap.cells, dx);
    const double mom_after = detail::total_momentum(snap.cells, dx);
    const double mass_scale = std::max(mass_before, kDensityFloor);
    double mom_scale = 0.0;
    for (const auto& c : snap.cells) mom_scale += std::abs(c.m) * dx;
    mom_scale = std::max(mom_scale, mass_scale);
    snap.max_step_mass_defect =
        std::max(snap.max_step_mass_defect, std::abs(mass_after - mass_before - in_mass) / mass_scale);
    snap.max_step_momentum_defect =
        std::max(snap.max_step_momentum_defect, std::abs(mom_after - mom_before - in_mom) / mom_scale);

    t = (g.t_end - (t + dt) <= 1e-14 * g.t_end) ? g.t_end : t + dt;
    ++snap.steps;
  }
  snap.time = t;
  if (snap.fallback_interfaces > 0)
    snap.notices.push_back("Lax-Friedrichs flux substituted at " + std::to_string(snap.fallback_interfaces) +
                           " interface evaluations carrying a delta shock or vacuum");
  return snap;
}

/// |M(t) - M(0) - net boundary inflow| / M(0).
inline double mass_conservation_error(const FieldSnapshot& s) {
  return std::abs(detail::total_mass(s.cells, s.dx) - s.initial_mass - s.mass_inflow) / s.initial_mass;
}

namespace detail {

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
inline constexpr std::array<double, 5> kGl5x = {-0.906179845938663992797626878299392, -0.538469310105683091036314420700208,
                                                0.0, 0.538469310105683091036314420700208,
                                                0.906179845938663992797626878299392};
inline constexpr std::array<double, 5> kGl5w = {0.236926885056189087514264040719917, 0.478628670499366468041291514835638,
                                                0.568888888888888888888888888888889, 0.478628670499366468041291514835638,
                                                0.236926885056189087514264040719917};

inline Conserved exact_cell_average(const RiemannSolution& sol, double a, double b, double t) {
  Conserved avg;
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int k = 0; k < 5; ++k) {
    const State s = sample(sol, (c + h * kGl5x[k]) / t).state;
    avg.rho += 0.5 * kGl5w[k] * s.rho;
    avg.m += 0.5 * kGl5w[k] * s.rho * s.u;
  }
  return avg;
}

}  // namespace detail

/// Cell averages of the exact solution on the snapshot's grid at its time.
inline FieldSnapshot project_exact(const RiemannSolution& sol, const FieldSnapshot& like) {
  if (sol.delta()) throw Error(ErrorKind::UnsupportedComparison, "project_exact: solution carries a delta shock");
  FieldSnapshot out = like;
  for (std::size_t i = 0; i < like.x.size(); ++i)
    out.cells[i] = detail::exact_cell_average(sol, like.x[i] - 0.5 * like.dx, like.x[i] + 0.5 * like.dx, like.time);
  return out;
}

struct L1Error {
  double rho = 0.0;
  double momentum = 0.0;
};

inline L1Error l1_error(const FieldSnapshot& snap, const RiemannSolution& sol) {
  if (sol.delta())
    throw Error(ErrorKind::UnsupportedComparison, "l1_error: undefined against a delta-shock measure");
  if (!(snap.time > 0.0)) throw Error(ErrorKind::Domain, "l1_error: snapshot time must be positive");
  L1Error e;
  for (std::size_t i = 0; i < snap.x.size(); ++i) {
    const auto ex = detail::exact_cell_average(sol, snap.x[i] - 0.5 * snap.dx, snap.x[i] + 0.5 * snap.dx, snap.time);
    e.rho += std::abs(snap.cells[i].rho - ex.rho) * snap.dx;
    e.momentum += std::abs(snap.cells[i].m - ex.m) * snap.dx;
  }
  return e;
}

struct RefinementRow {
  int cells = 0;
  L1Error error;
  double mass_error = 0.0;
};

struct RefinementStudy {
  std::vector<RefinementRow> rows;
  double order = 0.0;  // least-squares slope of -log(error) against log(cells)
  bool strictly_decreasing = false;
};

inline RefinementStudy refinement_study(const PressureParams& p, const State& left, const State& right,
                                        GridConfig base, const std::vector<int>& cells) {
  const auto sol = solve(p, left, right);
  if (sol.delta()) throw Error(ErrorKind::UnsupportedComparison, "refinement_study: delta-shock data");
  std::vector<std::future<RefinementRow>> jobs;
  for (int n : cells) {
    GridConfig g = base;
    g.cells = n;
    jobs.push_back(std::async(std::launch::async, [&p, &left, &right, &sol, g] {
      const auto snap = evolve(p, left, right, g);
      return RefinementRow{g.cells, l1_error(snap, sol), mass_conservation_error(snap)};
    }));
  }
  RefinementStudy st;
  for (auto& j : jobs) st.rows.push_back(j.get());
  st.strictly_decreasing = st.rows.size() >= 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(st.rows.size());
  for (std::size_t i = 0; i < st.rows.size(); ++i) {
    if (i > 0) st.strictly_decreasing = st.strictly_decreasing && st.rows[i].error.rho < st.rows[i - 1].error.rho;
    const double x = std::log(static_cast<double>(st.rows[i].cells));
    const double y = -std::log(st.rows[i].error.rho);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (st.rows.size() >= 2) st.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return st;
}

/// Mass carried by a forming delta shock: the integral over
/// |x - sigma t| <= half_width of rho minus the two-state step that the
/// delta sits on, compared with the exact weight w(t).
struct Concentration {
  double window_mass = 0.0;
  double baseline_mass = 0.0;
  double excess_mass = 0.0;
  double target_weight = 0.0;
  double relative_error = 0.0;
};

inline Concentration measure_concentration(const FieldSnapshot& snap, const RiemannSolution& sol,
                                           double half_width) {
  const DeltaShock* d = sol.delta();
  if (!d) throw Error(ErrorKind::Absent, "measure_concentration: solution has no delta shock");
  const double xc = d->sigma * snap.time;
  Concentration c;
  for (std::size_t i = 0; i < snap.x.size(); ++i) {
    if (std::abs(snap.x[i] - xc) > half_width) continue;
    c.window_mass += snap.cells[i].rho * snap.dx;
    c.baseline_mass += (snap.x[i] < xc ? sol.left.rho : sol.right.rho) * snap.dx;
  }
  c.excess_mass = c.window_mass - c.baseline_mass;
  c.target_weight = delta_weight_at(sol, snap.time);
  c.relative_error = std::abs(c.excess_mass - c.target_weight) / c.target_weight;
  return c;
}

}  // namespace ecg
