#pragma once

// Parameter sweeps toward the two limit systems: A, B -> 0 (pressureless
// transport) and A -> 0 at fixed B (generalized Chaplygin gas), with the
// analytic targets each sweep is compared against.

#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ecg/error.hpp"
#include "ecg/models.hpp"
#include "ecg/solver.hpp"
#include "ecg/waves.hpp"

namespace ecg {

enum class ScheduleMode { BothVanish, AVanishes };

constexpr std::string_view to_string(ScheduleMode m) {
  return m == ScheduleMode::BothVanish ? "both_vanish" : "a_vanishes";
}

inline ScheduleMode parse_schedule_mode(std::string_view s) {
  if (s == "both_vanish") return ScheduleMode::BothVanish;
  if (s == "a_vanishes") return ScheduleMode::AVanishes;
  throw Error(ErrorKind::Input, "unknown schedule mode '" + std::string(s) + "'");
}

struct SchedulePoint {
  double A = 0.0;
  double B = 0.0;
  friend bool operator==(const SchedulePoint&, const SchedulePoint&) = default;
};

struct Schedule {
  ScheduleMode mode = ScheduleMode::BothVanish;
  std::vector<SchedulePoint> points;
  double n = 2.0;
  double alpha = 1.0;

  /// A = B = 10^-k for k = k0..k1.
  static Schedule both_vanish_decades(int k0, int k1, double n, double alpha) {
    Schedule s{ScheduleMode::BothVanish, {}, n, alpha};
    for (int k = k0; k <= k1; ++k) s.points.push_back({std::pow(10.0, -k), std::pow(10.0, -k)});
    return s;
  }

  /// A = 10^-k for k = k0..k1 at fixed B.
  static Schedule a_vanishes_decades(int k0, int k1, double B, double n, double alpha) {
    Schedule s{ScheduleMode::AVanishes, {}, n, alpha};
    for (int k = k0; k <= k1; ++k) s.points.push_back({std::pow(10.0, -k), B});
    return s;
  }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

inline void validate(const Schedule& s) {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::Schedule, why); };
  if (s.points.empty()) fail("schedule has no points");
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& pt = s.points[i];
    if (!(pt.A > 0.0) || !(pt.B > 0.0) || !std::isfinite(pt.A) || !std::isfinite(pt.B))
      fail("point " + std::to_string(i) + ": A and B must be positive and finite");
    if (i == 0) continue;
    const auto& prev = s.points[i - 1];
    if (!(pt.A < prev.A)) fail("point " + std::to_string(i) + ": A must strictly decrease");
    if (s.mode == ScheduleMode::BothVanish && !(pt.B < prev.B))
      fail("point " + std::to_string(i) + ": B must strictly decrease");
    if (s.mode == ScheduleMode::AVanishes && pt.B != prev.B)
      fail("point " + std::to_string(i) + ": B must stay fixed");
  }
  validate(PressureParams{Model::ECG, s.points.front().A, s.points.front().B, s.n, s.alpha});
}

inline double default_sweep_tolerance(ScheduleMode m) { return m == ScheduleMode::BothVanish ? 1e-2 : 1e-3; }

struct SweepRecord {
  double A = 0.0;
  double B = 0.0;
  double rho_star = 0.0;
  double u_star = 0.0;
  double sigma1 = 0.0;  // 1-shock speed, or left fan edge for rarefaction sweeps
  double sigma2 = 0.0;  // 2-shock speed, or right fan edge
  double A_rho_star_n = 0.0;
  double mass_proxy = 0.0;      // rho*(sigma2 - sigma1)
  double momentum_proxy = 0.0;  // rho* u* (sigma2 - sigma1)
  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Analytic limits the sweep is compared against. Only the fields that
/// apply to the sweep kind are set.
struct SweepTargets {
  std::optional<double> sigma;
  std::optional<double> weight_rate;
  std::optional<double> weight_target_1;
  std::optional<double> weight_target_2;
  std::optional<double> mass_rate;
  std::optional<double> momentum_rate;
  std::optional<double> A_rho_n_limit;
  std::optional<double> A_rho_n_bound;
  std::optional<double> rho_star;
  std::optional<double> u_star;
  std::optional<double> left_edge;
  std::optional<double> right_edge;
  friend bool operator==(const SweepTargets&, const SweepTargets&) = default;
};

/// Absolute error of one observed quantity along the schedule.
struct ErrorSeries {
  std::string name;
  std::vector<double> errors;
  /// Final-error threshold; empty when only decrease is required.
  std::optional<double> threshold;
  bool decreasing_tail = false;
  bool monotone = false;
  bool converged = false;

  double final_error() const { return errors.empty() ? std::numeric_limits<double>::quiet_NaN() : errors.back(); }
  friend bool operator==(const ErrorSeries&, const ErrorSeries&) = default;
};

struct SweepFlag {
  std::string name;
  bool value = false;
  friend bool operator==(const SweepFlag&, const SweepFlag&) = default;
};

struct SweepReport {
  std::string kind;
  State left;
  State right;
  Schedule schedule;
  double tol = 0.0;
  std::vector<SweepRecord> records;
  SweepTargets targets;
  std::vector<ErrorSeries> series;
  std::vector<SweepFlag> flags;
  std::vector<std::pair<std::string, double>> diagnostics;

  bool all_converged() const {
    for (const auto& s : series)
      if (!s.converged) return false;
    for (const auto& f : flags)
      if (!f.value) return false;
    return true;
  }
  const ErrorSeries* find_series(std::string_view name) const {
    for (const auto& s : series)
      if (s.name == name) return &s;
    return nullptr;
  }
  std::optional<bool> flag(std::string_view name) const {
    for (const auto& f : flags)
      if (f.name == name) return f.value;
    return std::nullopt;
  }
  std::optional<double> diagnostic(std::string_view name) const {
    for (const auto& d : diagnostics)
      if (d.first == name) return d.second;
    return std::nullopt;
  }
  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

/// Errors at or below this are treated as converged when testing for
/// decrease; beyond it successive values only carry rounding noise.
inline constexpr double kSweepNoiseFloor = 1e-12;

namespace detail {

inline bool step_decreases(double prev, double next) { return next < prev || next <= kSweepNoiseFloor; }

inline ErrorSeries make_series(std::string name, std::vector<double> errors, std::optional<double> threshold) {
  ErrorSeries s{std::move(name), std::move(errors), threshold};
  const auto& e = s.errors;
  const std::size_t m = e.size();
  s.monotone = m >= 2;
  for (std::size_t i = 1; i < m; ++i) s.monotone = s.monotone && step_decreases(e[i - 1], e[i]);
  s.decreasing_tail = m >= 3 && step_decreases(e[m - 3], e[m - 2]) && step_decreases(e[m - 2], e[m - 1]);
  s.converged = s.decreasing_tail && (!threshold || e.back() <= *threshold);
  return s;
}

template <class Pred>
bool strictly_ordered(const std::vector<SweepRecord>& recs, Pred less) {
  if (recs.size() < 2) return false;
  for (std::size_t i = 1; i < recs.size(); ++i)
    if (!less(recs[i - 1], recs[i])) return false;
  return true;
}

inline std::string point_label(const SchedulePoint& pt) {
  std::ostringstream os;
  os.precision(17);
  os << "(A=" << pt.A << ", B=" << pt.B << ")";
  return os.str();
}

/// Solves every schedule point concurrently; results keep schedule order
/// and the first failure in schedule order is rethrown.
template <class Fn>
auto evaluate_points(const Schedule& s, Fn fn) {
  using R = decltype(fn(s.points.front()));
  std::vector<std::future<R>> futures;
  futures.reserve(s.points.size());
  for (const auto& pt : s.points) futures.push_back(std::async(std::launch::async, fn, pt));
  std::vector<R> out;
  out.reserve(futures.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

inline SweepRecord shock_record(const SchedulePoint& pt, double n, const RiemannSolution& sol) {
  const State m = *sol.intermediate;
  const double s1 = sol.segments[1].xi_lo;
  const double s2 = sol.segments[3].xi_lo;
  return {pt.A, pt.B, m.rho, m.u, s1, s2, pt.A * std::pow(m.rho, n), m.rho * (s2 - s1), m.rho * m.u * (s2 - s1)};
}

inline SweepRecord fan_record(const SchedulePoint& pt, double n, const RiemannSolution& sol) {
  const State m = *sol.intermediate;
  const double s1 = sol.segments[1].xi_lo;
  const double s2 = sol.segments[3].xi_hi;
  return {pt.A, pt.B, m.rho, m.u, s1, s2, pt.A * std::pow(m.rho, n), m.rho * (s2 - s1), m.rho * m.u * (s2 - s1)};
}

template <class F>
std::vector<double> errors_of(const std::vector<SweepRecord>& recs, F f) {
  std::vector<double> e;
  e.reserve(recs.size());
  for (const auto& r : recs) e.push_back(std::abs(f(r)));
  return e;
}

inline void require_mode(const Schedule& s, ScheduleMode m, const char* where) {
  if (s.mode != m)
    throw Error(ErrorKind::Schedule, std::string(where) + ": requires a " + std::string(to_string(m)) + " schedule");
  validate(s);
}

inline double gcg_exponent(double alpha) { return 0.5 * (alpha + 1.0); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Analytic targets

struct TransportDeltaTarget {
  double sigma;
  double w1_rate;        // (sigma [rho] - [rho u]) / sqrt(1 + sigma^2)
  double w2_rate;        // (sigma [rho u] - [rho u^2]) / sqrt(1 + sigma^2)
  double mass_rate;      // sigma [rho] - [rho u]
  double momentum_rate;  // sigma [rho u] - [rho u^2]
};

inline TransportDeltaTarget target_transport_delta(const State& left, const State& right) {
  if (!(left.u > right.u)) throw Error(ErrorKind::NotDeltaCase, "target_transport_delta: requires u- > u+");
  const double sigma = transport_delta(left, right).sigma;
  const double jr = right.rho - left.rho;
  const double jm = right.rho * right.u - left.rho * left.u;
  const double jf = right.rho * right.u * right.u - left.rho * left.u * left.u;
  const double mass = sigma * jr - jm;
  const double mom = sigma * jm - jf;
  const double norm = std::sqrt(1.0 + sigma * sigma);
  return {sigma, mass / norm, mom / norm, mass, mom};
}

/// Limit of A (rho*)^n as A, B -> 0: rho- rho+ (u- - u+)^2 / (sqrt(rho-) + sqrt(rho+))^2.
inline double target_A_rho_n(const State& left, const State& right) {
  if (left.u < right.u) throw Error(ErrorKind::NotDeltaCase, "target_A_rho_n: requires u- >= u+");
  const double du = left.u - right.u;
  const double s = std::sqrt(left.rho) + std::sqrt(right.rho);
  return left.rho * right.rho * du * du / (s * s);
}

struct GcgDeltaTarget {
  double sigma_B;
  double weight_rate;
  double mass_rate;      // sigma_B [rho] - [rho u]
  double momentum_rate;  // sigma_B [rho u] - [rho u^2 - B / rho^alpha]
};

inline GcgDeltaTarget target_gcg_delta(const State& left, const State& right, double B, double alpha) {
  const PressureParams p = make_gcg(B, alpha);
  if (!in_delta_region_gcg(p, left, right))
    throw Error(ErrorKind::NotDeltaCase, "target_gcg_delta: data outside the delta-shock region");
  const double s = gcg_delta_speed(p, left, right);
  const double jr = right.rho - left.rho;
  const double jm = right.rho * right.u - left.rho * left.u;
  const double jf = right.rho * right.u * right.u - B * std::pow(right.rho, -alpha) -
                    (left.rho * left.u * left.u - B * std::pow(left.rho, -alpha));
  return {s, gcg_delta_weight_rate(p, left, right), s * jr - jm, s * jm - jf};
}

/// Limit intermediate state of the two-rarefaction solution as A -> 0:
/// rho*^-k = (alpha+1)(u+ - u-)/(4 sqrt(alpha B)) + (rho+^-k + rho-^-k)/2 and
/// u* = (u+ + u-)/2 + sqrt(alpha B)/(alpha+1) (rho+^-k - rho-^-k).
inline State target_gcg_rarefaction_state(const State& left, const State& right, double B, double alpha) {
  const double k = detail::gcg_exponent(alpha);
  const double sab = std::sqrt(alpha * B);
  const double pl = std::pow(left.rho, -k), pr = std::pow(right.rho, -k);
  const double inv = (alpha + 1.0) * (right.u - left.u) / (4.0 * sab) + 0.5 * (pr + pl);
  if (!(inv > 0.0)) throw Error(ErrorKind::Precondition, "target_gcg_rarefaction_state: data not in region I");
  return {std::pow(inv, -1.0 / k), 0.5 * (right.u + left.u) + sab / (alpha + 1.0) * (pr - pl)};
}

// ---------------------------------------------------------------------------
// Thresholds on A

/// Below this A the ECG solution of region-V data is two shocks.
/// Returns +infinity when rho+ == rho-.
inline double threshold_A0(const State& left, const State& right, double B, double n, double alpha) {
  if (!in_delta_region_gcg(make_gcg(B, alpha), left, right))
    throw Error(ErrorKind::Precondition, "threshold_A0: data outside the delta-shock region");
  if (right.rho == left.rho) return std::numeric_limits<double>::infinity();
  const double du = right.u - left.u;
  const double coupling =
      B * (1.0 / right.rho - 1.0 / left.rho) * (std::pow(right.rho, -alpha) - std::pow(left.rho, -alpha));
  return right.rho * left.rho * (du * du - coupling) /
         ((right.rho - left.rho) * (std::pow(right.rho, n) - std::pow(left.rho, n)));
}

/// (n-1)^2 (u+ - u-)^2 / (4 n (rho+^((n-1)/2) - rho-^((n-1)/2))^2); +infinity
/// when n == 1 or rho+ == rho-. This bounds only the polytropic part of the
/// rarefaction integral, so it is not by itself sufficient for two
/// rarefactions; see exact_threshold_A1.
inline double threshold_A1(const State& left, const State& right, double n) {
  if (!(n >= 1.0 && n <= 3.0)) throw Error(ErrorKind::InvalidParams, "threshold_A1: requires 1 <= n <= 3");
  if (!(right.u > left.u)) throw Error(ErrorKind::Precondition, "threshold_A1: requires u+ > u-");
  if (n == 1.0 || right.rho == left.rho) return std::numeric_limits<double>::infinity();
  const double du = right.u - left.u;
  const double d = std::pow(right.rho, 0.5 * (n - 1.0)) - std::pow(left.rho, 0.5 * (n - 1.0));
  return (n - 1.0) * (n - 1.0) * du * du / (4.0 * n * d * d);
}

/// Supremum of the A for which region-I data of the GCG stay two
/// rarefactions in the ECG: the A solving u+ - u- = integral of c/rho
/// between the two densities. +infinity when rho+ == rho-.
inline double exact_threshold_A1(const State& left, const State& right, double B, double n, double alpha) {
  const PressureParams g = make_gcg(B, alpha);
  if (classify_gcg(g, left, right).tag != RegionGCG::Tag::I)
    throw Error(ErrorKind::Precondition, "exact_threshold_A1: data outside region I");
  if (right.rho == left.rho) return std::numeric_limits<double>::infinity();
  const double lo = std::min(left.rho, right.rho), hi = std::max(left.rho, right.rho);
  const double du = right.u - left.u;
  auto gap = [&](double log_a) {
    const PressureParams p{Model::ECG, std::exp(log_a), B, n, alpha};
    return rarefaction_integral(p, lo, hi) - du;
  };
  double a_lo = std::log(1e-300), a_hi = 0.0;
  while (gap(a_hi) < 0.0) {
    a_lo = a_hi;
    a_hi += 4.0;
  }
  return std::exp(find_root(gap, a_lo, a_hi, ToleranceConfig{1e-14, 1e-14, 400}));
}

// ---------------------------------------------------------------------------
// Sweeps

/// A, B -> 0 on compressive data: two shocks that merge into the transport
/// delta shock.
inline SweepReport run_vanishing_pressure_sweep(const State& left, const State& right, const Schedule& sched,
                                                std::optional<double> tol = std::nullopt) {
  detail::require_mode(sched, ScheduleMode::BothVanish, "run_vanishing_pressure_sweep");
  if (!(left.u > right.u))
    throw Error(ErrorKind::Schedule, "run_vanishing_pressure_sweep: requires u- > u+ (compressive data)");
  const double t = tol.value_or(default_sweep_tolerance(sched.mode));

  auto records = detail::evaluate_points(sched, [&](const SchedulePoint& pt) {
    const PressureParams p{Model::ECG, pt.A, pt.B, sched.n, sched.alpha};
    const auto sol = solve_ecg(p, left, right);
    if (sol.region != "S1S2")
      throw Error(ErrorKind::Schedule, "point " + detail::point_label(pt) + " classifies " + sol.region +
                                           ", expected S1S2");
    return detail::shock_record(pt, sched.n, sol);
  });

  const auto td = target_transport_delta(left, right);
  const double lim = target_A_rho_n(left, right);
  SweepReport rep{"vanishing_pressure", left, right, sched, t, std::move(records), {}, {}, {}, {}};
  rep.targets.sigma = td.sigma;
  rep.targets.weight_rate = transport_delta(left, right).weight_rate;
  rep.targets.weight_target_1 = td.w1_rate;
  rep.targets.weight_target_2 = td.w2_rate;
  rep.targets.mass_rate = td.mass_rate;
  rep.targets.momentum_rate = td.momentum_rate;
  rep.targets.A_rho_n_limit = lim;

  const auto& r = rep.records;
  const double s = td.sigma;
  rep.series.push_back(detail::make_series("u_star", detail::errors_of(r, [&](auto& x) { return x.u_star - s; }), t));
  rep.series.push_back(detail::make_series("sigma1", detail::errors_of(r, [&](auto& x) { return x.sigma1 - s; }), t));
  rep.series.push_back(detail::make_series("sigma2", detail::errors_of(r, [&](auto& x) { return x.sigma2 - s; }), t));
  rep.series.push_back(detail::make_series(
      "A_rho_star_n", detail::errors_of(r, [&](auto& x) { return x.A_rho_star_n - lim; }), std::nullopt));
  rep.series.push_back(detail::make_series(
      "mass_proxy", detail::errors_of(r, [&](auto& x) { return x.mass_proxy - td.mass_rate; }), std::nullopt));
  rep.series.push_back(detail::make_series(
      "momentum_proxy", detail::errors_of(r, [&](auto& x) { return x.momentum_proxy - td.momentum_rate; }),
      std::nullopt));
  rep.flags.push_back(
      {"rho_star_increasing", detail::strictly_ordered(r, [](auto& a, auto& b) { return a.rho_star < b.rho_star; })});
  return rep;
}

/// Maximum density deviation from the transport vacuum solution at 11
/// fixed xi spanning the vacuum and one half-width on each side.
inline double cavitation_profile_error(const RiemannSolution& sol, const State& left, const State& right) {
  const auto target = solve_transport(left, right);
  const double du = right.u - left.u;
  const double lo = left.u - 0.5 * du;
  double err = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double xi = lo + 2.0 * du * i / 10.0;
    err = std::max(err, std::abs(sample(sol, xi).state.rho - sample(target, xi).state.rho));
  }
  return err;
}

/// A, B -> 0 on expansive data: two rarefactions whose intermediate density
/// tends to vacuum.
inline SweepReport run_vacuum_sweep(const State& left, const State& right, const Schedule& sched,
                                    std::optional<double> tol = std::nullopt) {
  detail::require_mode(sched, ScheduleMode::BothVanish, "run_vacuum_sweep");
  if (!(left.u < right.u)) throw Error(ErrorKind::Schedule, "run_vacuum_sweep: requires u- < u+ (expansive data)");
  const double t = tol.value_or(default_sweep_tolerance(sched.mode));

  struct Point {
    SweepRecord rec;
    double profile;
  };
  auto points = detail::evaluate_points(sched, [&](const SchedulePoint& pt) {
    const PressureParams p{Model::ECG, pt.A, pt.B, sched.n, sched.alpha};
    const auto sol = solve_ecg(p, left, right);
    if (sol.region != "R1R2")
      throw Error(ErrorKind::Schedule, "point " + detail::point_label(pt) + " classifies " + sol.region +
                                           ", expected R1R2");
    return Point{detail::fan_record(pt, sched.n, sol), cavitation_profile_error(sol, left, right)};
  });

  SweepReport rep{"vacuum", left, right, sched, t, {}, {}, {}, {}, {}};
  for (const auto& pt : points) rep.records.push_back(pt.rec);
  rep.targets.left_edge = left.u;
  rep.targets.right_edge = right.u;
  rep.targets.rho_star = 0.0;

  const auto& r = rep.records;
  rep.series.push_back(detail::make_series("rho_star", detail::errors_of(r, [](auto& x) { return x.rho_star; }), t));
  rep.series.push_back(
      detail::make_series("left_edge", detail::errors_of(r, [&](auto& x) { return x.sigma1 - left.u; }), t));
  rep.series.push_back(
      detail::make_series("right_edge", detail::errors_of(r, [&](auto& x) { return x.sigma2 - right.u; }), t));
  std::vector<double> profile;
  for (const auto& pt : points) profile.push_back(pt.profile);
  rep.diagnostics.emplace_back("profile_rho_error_final", profile.back());
  rep.flags.push_back(
      {"rho_star_decreasing", detail::strictly_ordered(r, [](auto& a, auto& b) { return a.rho_star > b.rho_star; })});
  return rep;
}

/// A -> 0 at fixed B. Region-V data: two shocks that merge into the GCG
/// delta shock. Region-I data: two rarefactions that converge to the GCG
/// rarefactions (contacts when alpha = 1).
inline SweepReport run_to_gcg_sweep(const State& left, const State& right, const Schedule& sched,
                                    std::optional<double> tol = std::nullopt) {
  detail::require_mode(sched, ScheduleMode::AVanishes, "run_to_gcg_sweep");
  const double t = tol.value_or(default_sweep_tolerance(sched.mode));
  const double B = sched.points.front().B, n = sched.n, alpha = sched.alpha;
  const PressureParams gcg = make_gcg(B, alpha);
  const auto region = classify_gcg(gcg, left, right);

  if (region.tag == RegionGCG::Tag::V) {
    const double a0 = threshold_A0(left, right, B, n, alpha);
    for (const auto& pt : sched.points)
      if (!(pt.A < a0))
        throw Error(ErrorKind::Schedule, "point " + detail::point_label(pt) + " is not below A0 = " +
                                             std::to_string(a0));
    auto records = detail::evaluate_points(sched, [&](const SchedulePoint& pt) {
      const auto sol = solve_ecg(PressureParams{Model::ECG, pt.A, B, n, alpha}, left, right);
      if (sol.region != "S1S2")
        throw Error(ErrorKind::Schedule, "point " + detail::point_label(pt) + " classifies " + sol.region +
                                             ", expected S1S2");
      return detail::shock_record(pt, n, sol);
    });
    const auto tg = target_gcg_delta(left, right, B, alpha);
    SweepReport rep{"to_gcg_delta", left, right, sched, t, std::move(records), {}, {}, {}, {}};
    rep.targets.sigma = tg.sigma_B;
    rep.targets.weight_rate = tg.weight_rate;
    rep.targets.mass_rate = tg.mass_rate;
    rep.targets.momentum_rate = tg.momentum_rate;
    const double bound = left.rho * (left.u - right.u) * (left.u - right.u);
    rep.targets.A_rho_n_bound = bound;

    const auto& r = rep.records;
    const double s = tg.sigma_B;
    rep.series.push_back(
        detail::make_series("u_star", detail::errors_of(r, [&](auto& x) { return x.u_star - s; }), t));
    rep.series.push_back(
        detail::make_series("sigma1", detail::errors_of(r, [&](auto& x) { return x.sigma1 - s; }), t));
    rep.series.push_back(
        detail::make_series("sigma2", detail::errors_of(r, [&](auto& x) { return x.sigma2 - s; }), t));
    rep.series.push_back(detail::make_series(
        "mass_proxy", detail::errors_of(r, [&](auto& x) { return x.mass_proxy - tg.mass_rate; }), std::nullopt));
    rep.series.push_back(detail::make_series(
        "momentum_proxy", detail::errors_of(r, [&](auto& x) { return x.momentum_proxy - tg.momentum_rate; }),
        std::nullopt));
    rep.flags.push_back({"rho_star_increasing",
                         detail::strictly_ordered(r, [](auto& a, auto& b) { return a.rho_star < b.rho_star; })});
    bool bounded = true;
    for (const auto& x : r) bounded = bounded && x.A_rho_star_n < bound;
    rep.flags.push_back({"A_rho_star_n_bounded", bounded});

    // L-hat = A (rho*)^n at the last point against the two limit relations.
    // The consistent pairing matches each density with its own side; the
    // swapped pairing is reported for comparison only.
    const auto& last = r.back();
    const double L = last.A_rho_star_n;
    const double bl = B * std::pow(left.rho, -alpha), br = B * std::pow(right.rho, -alpha);
    const double dl = left.u - last.u_star, dr = right.u - last.u_star;
    const double res_l = std::abs(L + bl - left.rho * dl * dl);
    const double res_r = std::abs(L + br - right.rho * dr * dr);
    rep.diagnostics.emplace_back("L_hat", L);
    rep.diagnostics.emplace_back("L_residual_left", res_l);
    rep.diagnostics.emplace_back("L_residual_right", res_r);
    rep.diagnostics.emplace_back("L_residual_left_swapped", std::abs(L + br - left.rho * dl * dl));
    rep.diagnostics.emplace_back("L_residual_right_swapped", std::abs(L + bl - right.rho * dr * dr));
    rep.diagnostics.emplace_back("A0", a0);
    rep.flags.push_back({"L_relations", res_l <= 10.0 * t && res_r <= 10.0 * t});
    return rep;
  }

  if (region.tag == RegionGCG::Tag::I) {
    double a1 = std::numeric_limits<double>::infinity();
    if (n > 1.0 && right.rho != left.rho) {
      a1 = threshold_A1(left, right, n);
      for (const auto& pt : sched.points)
        if (!(pt.A < a1))
          throw Error(ErrorKind::Schedule, "point " + detail::point_label(pt) + " is not below A1 = " +
                                               std::to_string(a1));
    }
    auto records = detail::evaluate_points(sched, [&](const SchedulePoint& pt) {
      const auto sol = solve_ecg(PressureParams{Model::ECG, pt.A, B, n, alpha}, left, right);
      if (sol.region != "R1R2")
        throw Error(ErrorKind::Schedule, "point " + detail::point_label(pt) + " classifies " + sol.region +
                                             ", expected R1R2");
      return detail::fan_record(pt, n, sol);
    });
    const State lim = target_gcg_rarefaction_state(left, right, B, alpha);
    const double k = detail::gcg_exponent(alpha);
    const double sab = std::sqrt(alpha * B);
    const double le = left.u - sab * std::pow(left.rho, -k);
    const double re = right.u + sab * std::pow(right.rho, -k);
    SweepReport rep{"to_gcg_rarefaction", left, right, sched, t, std::move(records), {}, {}, {}, {}};
    rep.targets.rho_star = lim.rho;
    rep.targets.u_star = lim.u;
    rep.targets.left_edge = le;
    rep.targets.right_edge = re;
    const auto& r = rep.records;
    rep.series.push_back(
        detail::make_series("rho_star", detail::errors_of(r, [&](auto& x) { return x.rho_star - lim.rho; }), t));
    rep.series.push_back(
        detail::make_series("u_star", detail::errors_of(r, [&](auto& x) { return x.u_star - lim.u; }), t));
    rep.series.push_back(
        detail::make_series("left_edge", detail::errors_of(r, [&](auto& x) { return x.sigma1 - le; }), t));
    rep.series.push_back(
        detail::make_series("right_edge", detail::errors_of(r, [&](auto& x) { return x.sigma2 - re; }), t));
    rep.diagnostics.emplace_back("A1", a1);
    if (right.rho != left.rho) rep.diagnostics.emplace_back("A1_exact", exact_threshold_A1(left, right, B, n, alpha));
    return rep;
  }

  throw Error(ErrorKind::Schedule, "run_to_gcg_sweep: data classify as GCG region " +
                                       std::string(to_string(region.tag)) + "; expected I or V");
}

}  // namespace ecg
