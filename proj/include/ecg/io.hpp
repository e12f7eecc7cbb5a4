#pragma once

// JSON and CSV serialization of problems, solutions, classifications, sweep
// reports and finite-volume snapshots. JSON output keeps key order and uses
// shortest round-trip decimal formatting, so parse(dump(x)) == x bit for bit.

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecg/error.hpp"
#include "ecg/fvcheck.hpp"
#include "ecg/limits.hpp"
#include "ecg/models.hpp"
#include "ecg/solver.hpp"
#include "ecg/waves.hpp"

namespace ecg::io {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalars

/// Finite values stay numbers; infinities and NaN become "inf", "-inf", "nan".
inline Json encode_real(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline double decode_real(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error(ErrorKind::Input, std::string(what) + ": expected a number");
}

inline Json encode_optional(const std::optional<double>& v) { return v ? encode_real(*v) : Json(nullptr); }

inline std::optional<double> decode_optional(const Json& j, const char* what) {
  if (j.is_null()) return std::nullopt;
  return decode_real(j, what);
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object()) throw Error(ErrorKind::Input, std::string(where) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::Input, std::string(where) + ": missing key '" + key + "'");
  return *it;
}

inline void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw Error(ErrorKind::Input, std::string(where) + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw Error(ErrorKind::Input, std::string(where) + ": unknown key '" + k + "'");
}

inline double number(const Json& j, const char* key, const char* where) {
  return decode_real(field(j, key, where), (std::string(where) + "." + key).c_str());
}

inline std::string text(const Json& j, const char* key, const char* where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) throw Error(ErrorKind::Input, std::string(where) + "." + key + ": expected a string");
  return v.get<std::string>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Core types

inline Json to_json(const State& s) { return Json{{"rho", encode_real(s.rho)}, {"u", encode_real(s.u)}}; }

inline State state_from_json(const Json& j, const char* where = "state") {
  detail::reject_unknown(j, {"rho", "u"}, where);
  return {detail::number(j, "rho", where), detail::number(j, "u", where)};
}

inline Json to_json(const PressureParams& p) {
  return Json{{"model_tag", std::string(to_string(p.model))},
              {"A", p.A},
              {"B", p.B},
              {"n", p.n},
              {"alpha", p.alpha}};
}

inline PressureParams params_from_json(const Json& j) {
  detail::reject_unknown(j, {"model_tag", "A", "B", "n", "alpha"}, "model");
  return {parse_model(detail::text(j, "model_tag", "model")), detail::number(j, "A", "model"),
          detail::number(j, "B", "model"), detail::number(j, "n", "model"), detail::number(j, "alpha", "model")};
}

inline Json to_json(const WaveSegment& s) {
  Json j{{"kind", std::string(to_string(s.kind))}, {"xi_lo", encode_real(s.xi_lo)}, {"xi_hi", encode_real(s.xi_hi)}};
  if (const auto* st = std::get_if<State>(&s.payload)) {
    j["state"] = to_json(*st);
  } else if (const auto* f = std::get_if<Fan>(&s.payload)) {
    j["family"] = f->family == WaveFamily::One ? 1 : 2;
    j["head"] = to_json(f->head);
    j["tail"] = to_json(f->tail);
  } else if (const auto* jp = std::get_if<Jump>(&s.payload)) {
    j["left"] = to_json(jp->left);
    j["right"] = to_json(jp->right);
    j["speed"] = encode_real(jp->speed);
  } else if (const auto* d = std::get_if<DeltaShock>(&s.payload)) {
    j["sigma"] = encode_real(d->sigma);
    j["u_delta"] = encode_real(d->u_delta);
    j["weight_rate"] = encode_real(d->weight_rate);
    j["left"] = to_json(d->left);
    j["right"] = to_json(d->right);
    j["entropy_ok"] = d->entropy_ok;
  }
  return j;
}

inline WaveKind parse_wave_kind(const std::string& s) {
  for (WaveKind k : {WaveKind::Constant, WaveKind::RarefactionFan, WaveKind::Shock, WaveKind::Contact,
                     WaveKind::DeltaShock, WaveKind::Vacuum})
    if (to_string(k) == s) return k;
  throw Error(ErrorKind::Input, "unknown segment kind '" + s + "'");
}

inline WaveSegment segment_from_json(const Json& j) {
  WaveSegment s;
  s.kind = parse_wave_kind(detail::text(j, "kind", "segment"));
  s.xi_lo = detail::number(j, "xi_lo", "segment");
  s.xi_hi = detail::number(j, "xi_hi", "segment");
  switch (s.kind) {
    case WaveKind::Constant:
      detail::reject_unknown(j, {"kind", "xi_lo", "xi_hi", "state"}, "segment");
      s.payload = state_from_json(detail::field(j, "state", "segment"));
      break;
    case WaveKind::RarefactionFan: {
      detail::reject_unknown(j, {"kind", "xi_lo", "xi_hi", "family", "head", "tail"}, "segment");
      const int fam = detail::field(j, "family", "segment").get<int>();
      s.payload = Fan{fam == 1 ? WaveFamily::One : WaveFamily::Two, state_from_json(detail::field(j, "head", "segment")),
                      state_from_json(detail::field(j, "tail", "segment"))};
      break;
    }
    case WaveKind::Shock:
    case WaveKind::Contact:
      detail::reject_unknown(j, {"kind", "xi_lo", "xi_hi", "left", "right", "speed"}, "segment");
      s.payload = Jump{state_from_json(detail::field(j, "left", "segment")),
                       state_from_json(detail::field(j, "right", "segment")), detail::number(j, "speed", "segment")};
      break;
    case WaveKind::DeltaShock:
      detail::reject_unknown(j,
                             {"kind", "xi_lo", "xi_hi", "sigma", "u_delta", "weight_rate", "left", "right", "entropy_ok"},
                             "segment");
      s.payload = DeltaShock{detail::number(j, "sigma", "segment"),
                             detail::number(j, "u_delta", "segment"),
                             detail::number(j, "weight_rate", "segment"),
                             state_from_json(detail::field(j, "left", "segment")),
                             state_from_json(detail::field(j, "right", "segment")),
                             detail::field(j, "entropy_ok", "segment").get<bool>()};
      break;
    case WaveKind::Vacuum:
      detail::reject_unknown(j, {"kind", "xi_lo", "xi_hi"}, "segment");
      s.payload = std::monostate{};
      break;
  }
  return s;
}

inline Json to_json(const RiemannSolution& sol) {
  Json segs = Json::array();
  for (const auto& s : sol.segments) segs.push_back(to_json(s));
  return Json{{"model", to_json(sol.model)},
              {"left", to_json(sol.left)},
              {"right", to_json(sol.right)},
              {"region", sol.region},
              {"intermediate", sol.intermediate ? to_json(*sol.intermediate) : Json(nullptr)},
              {"segments", segs}};
}

inline RiemannSolution solution_from_json(const Json& j) {
  detail::reject_unknown(j, {"model", "left", "right", "region", "intermediate", "segments"}, "solution");
  RiemannSolution sol;
  sol.model = params_from_json(detail::field(j, "model", "solution"));
  sol.left = state_from_json(detail::field(j, "left", "solution"));
  sol.right = state_from_json(detail::field(j, "right", "solution"));
  sol.region = detail::text(j, "region", "solution");
  const Json& mid = detail::field(j, "intermediate", "solution");
  if (!mid.is_null()) sol.intermediate = state_from_json(mid);
  for (const auto& s : detail::field(j, "segments", "solution")) sol.segments.push_back(segment_from_json(s));
  return sol;
}

// ---------------------------------------------------------------------------
// Classification

struct Classification {
  PressureParams model;
  State left;
  State right;
  std::string region;
  std::optional<bool> delta_entropy;
  friend bool operator==(const Classification&, const Classification&) = default;
};

inline Classification classify(const PressureParams& p, const State& left, const State& right) {
  Classification c{p, left, right, "", std::nullopt};
  switch (p.model) {
    case Model::ECG: {
      const auto r = classify_ecg(p, left, right);
      c.region = r.tag == RegionECG::Tag::OnBoundary ? "boundary:" + std::string(to_string(r.curve))
                                                     : std::string(to_string(r.tag));
      break;
    }
    case Model::GCG: {
      const auto r = classify_gcg(p, left, right);
      c.region = r.tag == RegionGCG::Tag::OnBoundary ? "boundary:" + std::string(to_string(r.curve))
                                                     : std::string(to_string(r.tag));
      c.delta_entropy = r.delta_entropy;
      break;
    }
    case Model::Transport:
      validate(p);
      c.region = left.u < right.u ? "vacuum" : left.u == right.u ? "contact" : "delta";
      break;
  }
  return c;
}

inline Json to_json(const Classification& c) {
  return Json{{"model", to_json(c.model)},
              {"left", to_json(c.left)},
              {"right", to_json(c.right)},
              {"region", c.region},
              {"delta_entropy", c.delta_entropy ? Json(*c.delta_entropy) : Json(nullptr)}};
}

inline Classification classification_from_json(const Json& j) {
  detail::reject_unknown(j, {"model", "left", "right", "region", "delta_entropy"}, "classification");
  Classification c;
  c.model = params_from_json(detail::field(j, "model", "classification"));
  c.left = state_from_json(detail::field(j, "left", "classification"));
  c.right = state_from_json(detail::field(j, "right", "classification"));
  c.region = detail::text(j, "region", "classification");
  const Json& d = detail::field(j, "delta_entropy", "classification");
  if (!d.is_null()) c.delta_entropy = d.get<bool>();
  return c;
}

// ---------------------------------------------------------------------------
// Sweeps

inline Json to_json(const Schedule& s) {
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back(Json{{"A", p.A}, {"B", p.B}});
  return Json{{"mode", std::string(to_string(s.mode))}, {"points", pts}, {"n", s.n}, {"alpha", s.alpha}};
}

inline Schedule schedule_from_json(const Json& j) {
  detail::reject_unknown(j, {"mode", "points", "n", "alpha"}, "schedule");
  Schedule s;
  s.mode = parse_schedule_mode(detail::text(j, "mode", "schedule"));
  for (const auto& p : detail::field(j, "points", "schedule")) {
    detail::reject_unknown(p, {"A", "B"}, "schedule.points");
    s.points.push_back({detail::number(p, "A", "schedule.points"), detail::number(p, "B", "schedule.points")});
  }
  s.n = detail::number(j, "n", "schedule");
  s.alpha = detail::number(j, "alpha", "schedule");
  return s;
}

inline Json to_json(const SweepRecord& r) {
  return Json{{"A", r.A},
              {"B", r.B},
              {"rho_star", encode_real(r.rho_star)},
              {"u_star", encode_real(r.u_star)},
              {"sigma1", encode_real(r.sigma1)},
              {"sigma2", encode_real(r.sigma2)},
              {"A_rho_star_n", encode_real(r.A_rho_star_n)},
              {"mass_proxy", encode_real(r.mass_proxy)},
              {"momentum_proxy", encode_real(r.momentum_proxy)}};
}

inline SweepRecord record_from_json(const Json& j) {
  const char* w = "record";
  detail::reject_unknown(
      j, {"A", "B", "rho_star", "u_star", "sigma1", "sigma2", "A_rho_star_n", "mass_proxy", "momentum_proxy"}, w);
  return {detail::number(j, "A", w),          detail::number(j, "B", w),
          detail::number(j, "rho_star", w),   detail::number(j, "u_star", w),
          detail::number(j, "sigma1", w),     detail::number(j, "sigma2", w),
          detail::number(j, "A_rho_star_n", w), detail::number(j, "mass_proxy", w),
          detail::number(j, "momentum_proxy", w)};
}

#define ECG_TARGET_FIELDS(X)                                                                                   \
  X(sigma) X(weight_rate) X(weight_target_1) X(weight_target_2) X(mass_rate) X(momentum_rate) X(A_rho_n_limit) \
      X(A_rho_n_bound) X(rho_star) X(u_star) X(left_edge) X(right_edge)

inline Json to_json(const SweepTargets& t) {
  Json j = Json::object();
#define ECG_PUT(f) j[#f] = encode_optional(t.f);
  ECG_TARGET_FIELDS(ECG_PUT)
#undef ECG_PUT
  return j;
}

inline SweepTargets targets_from_json(const Json& j) {
  SweepTargets t;
#define ECG_NAME(f) #f,
  detail::reject_unknown(j, {ECG_TARGET_FIELDS(ECG_NAME)}, "targets");
#undef ECG_NAME
#define ECG_GET(f) t.f = decode_optional(detail::field(j, #f, "targets"), "targets." #f);
  ECG_TARGET_FIELDS(ECG_GET)
#undef ECG_GET
  return t;
}

#undef ECG_TARGET_FIELDS

inline Json to_json(const ErrorSeries& s) {
  Json errs = Json::array();
  for (double e : s.errors) errs.push_back(encode_real(e));
  return Json{{"name", s.name},
              {"errors", errs},
              {"final_error", encode_real(s.final_error())},
              {"threshold", encode_optional(s.threshold)},
              {"decreasing_tail", s.decreasing_tail},
              {"monotone", s.monotone},
              {"converged", s.converged}};
}

inline ErrorSeries series_from_json(const Json& j) {
  const char* w = "series";
  detail::reject_unknown(j, {"name", "errors", "final_error", "threshold", "decreasing_tail", "monotone", "converged"},
                         w);
  ErrorSeries s;
  s.name = detail::text(j, "name", w);
  for (const auto& e : detail::field(j, "errors", w)) s.errors.push_back(decode_real(e, "series.errors"));
  s.threshold = decode_optional(detail::field(j, "threshold", w), "series.threshold");
  s.decreasing_tail = detail::field(j, "decreasing_tail", w).get<bool>();
  s.monotone = detail::field(j, "monotone", w).get<bool>();
  s.converged = detail::field(j, "converged", w).get<bool>();
  return s;
}

inline Json to_json(const SweepReport& r) {
  Json recs = Json::array(), series = Json::array(), flags = Json::array(), diags = Json::array();
  for (const auto& x : r.records) recs.push_back(to_json(x));
  for (const auto& s : r.series) series.push_back(to_json(s));
  for (const auto& f : r.flags) flags.push_back(Json{{"name", f.name}, {"value", f.value}});
  for (const auto& d : r.diagnostics) diags.push_back(Json{{"name", d.first}, {"value", encode_real(d.second)}});
  return Json{{"kind", r.kind},
              {"left", to_json(r.left)},
              {"right", to_json(r.right)},
              {"schedule", to_json(r.schedule)},
              {"tol", r.tol},
              {"converged", r.all_converged()},
              {"records", recs},
              {"targets", to_json(r.targets)},
              {"series", series},
              {"flags", flags},
              {"diagnostics", diags}};
}

inline SweepReport sweep_from_json(const Json& j) {
  const char* w = "sweep";
  detail::reject_unknown(
      j, {"kind", "left", "right", "schedule", "tol", "converged", "records", "targets", "series", "flags", "diagnostics"},
      w);
  SweepReport r;
  r.kind = detail::text(j, "kind", w);
  r.left = state_from_json(detail::field(j, "left", w));
  r.right = state_from_json(detail::field(j, "right", w));
  r.schedule = schedule_from_json(detail::field(j, "schedule", w));
  r.tol = detail::number(j, "tol", w);
  for (const auto& x : detail::field(j, "records", w)) r.records.push_back(record_from_json(x));
  r.targets = targets_from_json(detail::field(j, "targets", w));
  for (const auto& x : detail::field(j, "series", w)) r.series.push_back(series_from_json(x));
  for (const auto& x : detail::field(j, "flags", w))
    r.flags.push_back({detail::text(x, "name", "flag"), detail::field(x, "value", "flag").get<bool>()});
  for (const auto& x : detail::field(j, "diagnostics", w))
    r.diagnostics.emplace_back(detail::text(x, "name", "diagnostic"), detail::number(x, "value", "diagnostic"));
  return r;
}

// ---------------------------------------------------------------------------
// Problem files

struct Problem {
  PressureParams model;
  std::optional<State> left;
  std::optional<State> right;
  std::optional<Json> schedule;  // resolved against the model by make_schedule
  std::optional<GridConfig> grid;
};

inline PressureParams model_block_from_json(const Json& j) {
  const char* w = "model";
  detail::reject_unknown(j, {"tag", "A", "B", "n", "alpha"}, w);
  PressureParams p;
  p.model = parse_model(detail::text(j, "tag", w));
  auto opt = [&](const char* key, double fallback) { return j.contains(key) ? detail::number(j, key, w) : fallback; };
  switch (p.model) {
    case Model::ECG:
      p.A = detail::number(j, "A", w);
      p.B = detail::number(j, "B", w);
      p.n = detail::number(j, "n", w);
      p.alpha = detail::number(j, "alpha", w);
      break;
    case Model::GCG:
      p.A = opt("A", 0.0);
      p.B = detail::number(j, "B", w);
      p.n = opt("n", 1.0);
      p.alpha = detail::number(j, "alpha", w);
      break;
    case Model::Transport:
      p.A = opt("A", 0.0);
      p.B = opt("B", 0.0);
      p.n = opt("n", 1.0);
      p.alpha = opt("alpha", 1.0);
      break;
  }
  return p;
}

inline GridConfig grid_from_json(const Json& j) {
  const char* w = "grid";
  detail::reject_unknown(j, {"x_lo", "x_hi", "cells", "cfl", "t_end", "scheme"}, w);
  GridConfig g;
  if (j.contains("x_lo")) g.x_lo = detail::number(j, "x_lo", w);
  if (j.contains("x_hi")) g.x_hi = detail::number(j, "x_hi", w);
  if (j.contains("cells")) {
    const Json& c = j.at("cells");
    if (!c.is_number_integer()) throw Error(ErrorKind::Input, "grid.cells: expected an integer");
    g.cells = c.get<int>();
  }
  if (j.contains("cfl")) g.cfl = detail::number(j, "cfl", w);
  if (j.contains("t_end")) g.t_end = detail::number(j, "t_end", w);
  if (j.contains("scheme")) g.scheme = parse_scheme(detail::text(j, "scheme", w));
  return g;
}

inline Problem problem_from_json(const Json& j) {
  detail::reject_unknown(j, {"model", "left", "right", "schedule", "grid"}, "problem");
  Problem pr;
  pr.model = model_block_from_json(detail::field(j, "model", "problem"));
  if (j.contains("left")) pr.left = state_from_json(j.at("left"), "left");
  if (j.contains("right")) pr.right = state_from_json(j.at("right"), "right");
  if (j.contains("schedule")) {
    detail::reject_unknown(j.at("schedule"), {"mode", "decades", "points"}, "schedule");
    pr.schedule = j.at("schedule");
  }
  if (j.contains("grid")) pr.grid = grid_from_json(j.at("grid"));
  return pr;
}

inline Problem parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Input, std::string("problem file is not valid JSON: ") + e.what());
  }
  try {
    return problem_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Input, std::string("problem file: ") + e.what());
  }
}

/// Builds the schedule from a problem's schedule block: either
/// "decades": [k0, k1] (A = B = 10^-k, or A = 10^-k at the model's B) or an
/// explicit "points" list of {A, B}.
inline Schedule make_schedule(const Json& block, const PressureParams& model) {
  const char* w = "schedule";
  const ScheduleMode mode = parse_schedule_mode(detail::text(block, "mode", w));
  const bool has_decades = block.contains("decades"), has_points = block.contains("points");
  if (has_decades == has_points) throw Error(ErrorKind::Input, "schedule: give exactly one of 'decades' or 'points'");
  if (has_decades) {
    const Json& d = block.at("decades");
    if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer())
      throw Error(ErrorKind::Input, "schedule.decades: expected [k0, k1] integers");
    const int k0 = d[0].get<int>(), k1 = d[1].get<int>();
    if (k1 < k0) throw Error(ErrorKind::Schedule, "schedule.decades: k1 < k0");
    return mode == ScheduleMode::BothVanish ? Schedule::both_vanish_decades(k0, k1, model.n, model.alpha)
                                            : Schedule::a_vanishes_decades(k0, k1, model.B, model.n, model.alpha);
  }
  Schedule s{mode, {}, model.n, model.alpha};
  for (const auto& p : block.at("points")) {
    detail::reject_unknown(p, {"A", "B"}, "schedule.points");
    s.points.push_back({detail::number(p, "A", "schedule.points"), detail::number(p, "B", "schedule.points")});
  }
  return s;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string csv_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv_row(std::ostream& os, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_real(row[i]);
  os << '\n';
}

/// x, xi, rho, u, P at `samples` uniform xi values spanning the waves and a
/// margin on both sides, at time t.
inline void write_samples_csv(std::ostream& os, const RiemannSolution& sol, double t, int samples) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : sol.segments) {
    if (std::isfinite(s.xi_lo)) lo = std::min(lo, s.xi_lo);
    if (std::isfinite(s.xi_hi)) hi = std::max(hi, s.xi_hi);
  }
  if (!std::isfinite(lo)) lo = hi = 0.0;
  const double pad = 0.5 * std::max(hi - lo, 1.0);
  lo -= pad;
  hi += pad;
  os << "x,xi,rho,u,P\n";
  for (int i = 0; i < samples; ++i) {
    const double xi = samples == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (samples - 1);
    const auto s = sample(sol, xi).state;
    const double P = s.rho > 0.0 ? pressure(sol.model, s.rho) : 0.0;
    write_csv_row(os, {xi * t, xi, s.rho, s.u, P});
  }
}

inline void write_sweep_csv(std::ostream& os, const SweepReport& r) {
  os << "A,B,rho_star,u_star,sigma1,sigma2,A_rho_star_n,mass_proxy,momentum_proxy\n";
  for (const auto& x : r.records)
    write_csv_row(os, {x.A, x.B, x.rho_star, x.u_star, x.sigma1, x.sigma2, x.A_rho_star_n, x.mass_proxy,
                       x.momentum_proxy});
}

inline void write_snapshot_csv(std::ostream& os, const FieldSnapshot& s, const PressureParams& p) {
  os << "x,rho,momentum,u,pressure\n";
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const auto& c = s.cells[i];
    const bool vac = c.rho < kDensityFloor;
    write_csv_row(os, {s.x[i], c.rho, c.m, vac ? 0.0 : c.m / c.rho, vac ? 0.0 : pressure(p, c.rho)});
  }
}

}  // namespace ecg::io
