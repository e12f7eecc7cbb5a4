#pragma once

// Exact self-similar Riemann solutions for the three model tags and
// point sampling in xi = x / t.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "ecg/error.hpp"
#include "ecg/models.hpp"
#include "ecg/numerics.hpp"
#include "ecg/waves.hpp"

namespace ecg {

enum class WaveKind { Constant, RarefactionFan, Shock, Contact, DeltaShock, Vacuum };

constexpr std::string_view to_string(WaveKind k) {
  switch (k) {
    case WaveKind::Constant: return "constant";
    case WaveKind::RarefactionFan: return "rarefaction";
    case WaveKind::Shock: return "shock";
    case WaveKind::Contact: return "contact";
    case WaveKind::DeltaShock: return "delta_shock";
    case WaveKind::Vacuum: return "vacuum";
  }
  return "?";
}

/// Rarefaction fan of one family. `head` is the state on the fan's left
/// edge and anchors the integral curve; `tail` is the right-edge state.
struct Fan {
  WaveFamily family = WaveFamily::One;
  State head;
  State tail;
  friend bool operator==(const Fan&, const Fan&) = default;
};

/// Shock or contact discontinuity.
struct Jump {
  State left;
  State right;
  double speed = 0.0;
  friend bool operator==(const Jump&, const Jump&) = default;
};

struct DeltaShock {
  double sigma = 0.0;
  double u_delta = 0.0;
  double weight_rate = 0.0;
  State left;
  State right;
  bool entropy_ok = false;
  friend bool operator==(const DeltaShock&, const DeltaShock&) = default;
};

using SegmentPayload = std::variant<std::monostate, State, Fan, Jump, DeltaShock>;

struct WaveSegment {
  WaveKind kind = WaveKind::Constant;
  double xi_lo = -std::numeric_limits<double>::infinity();
  double xi_hi = std::numeric_limits<double>::infinity();
  SegmentPayload payload;

  bool is_point() const {
    return kind == WaveKind::Shock || kind == WaveKind::Contact || kind == WaveKind::DeltaShock;
  }
  friend bool operator==(const WaveSegment&, const WaveSegment&) = default;
};

struct RiemannSolution {
  PressureParams model;
  State left;
  State right;
  std::vector<WaveSegment> segments;
  std::optional<State> intermediate;
  /// R1R2 / R1S2 / S1R2 / S1S2, I..V, vacuum / contact / delta / constant,
  /// or "boundary:<curve>" when one wave has zero strength.
  std::string region;

  const DeltaShock* delta() const {
    for (const auto& s : segments)
      if (const auto* d = std::get_if<DeltaShock>(&s.payload)) return d;
    return nullptr;
  }
  friend bool operator==(const RiemannSolution&, const RiemannSolution&) = default;
};

namespace detail {

inline double inf() { return std::numeric_limits<double>::infinity(); }

/// Solver root tolerance, tighter than the library default so that fan
/// edges meet the adjacent constant states to well under 1e-8.
inline ToleranceConfig solver_root_tolerance() { return {1e-13, 1e-14, 200}; }

inline WaveSegment constant_segment(const State& s, double lo, double hi) {
  return {WaveKind::Constant, lo, hi, s};
}

inline WaveSegment jump_segment(WaveKind kind, const State& l, const State& r, double speed) {
  return {kind, speed, speed, Jump{l, r, speed}};
}

struct TwoWaveOutcome {
  State mid;
  bool has_wave1 = true;
  bool has_wave2 = true;
  bool rarefaction1 = false;
  bool rarefaction2 = false;
};

/// Intersects the forward 1-curve through `left` with the backward 2-curve
/// through `right`. The root is sought in s = ln rho so that the tolerance is
/// relative in density over the whole range the sweeps visit.
inline TwoWaveOutcome intersect_curves(const PressureParams& p, const State& left, const State& right) {
  auto phi1 = [&](double rho) { return wave_curve_u(p, WaveFamily::One, left, rho); };
  auto phi2 = [&](double rho) { return backward_two_curve_u(p, right, rho); };
  auto F = [&](double rho) { return phi1(rho) - phi2(rho); };

  TwoWaveOutcome out;
  const double f1 = F(left.rho);
  const double f2 = F(right.rho);
  if (std::abs(f1) <= kBoundaryTolerance && std::abs(f2) > kBoundaryTolerance) {
    out.has_wave1 = false;
    out.mid = left;
    out.rarefaction2 = f2 < 0.0;
    return out;
  }
  if (std::abs(f2) <= kBoundaryTolerance && std::abs(f1) > kBoundaryTolerance) {
    out.has_wave2 = false;
    out.mid = right;
    out.rarefaction1 = f1 < 0.0;
    return out;
  }
  out.rarefaction1 = f1 < 0.0;
  out.rarefaction2 = f2 < 0.0;

  double lo, hi;
  try {
    if (out.rarefaction1 && out.rarefaction2) {
      std::tie(lo, hi) = expand_bracket(F, std::min(left.rho, right.rho), Direction::Down);
    } else if (!out.rarefaction1 && !out.rarefaction2) {
      std::tie(lo, hi) = expand_bracket(F, std::max(left.rho, right.rho), Direction::Up);
    } else {
      lo = std::min(left.rho, right.rho);
      hi = std::max(left.rho, right.rho);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRootInRange) throw;
    throw Error(ErrorKind::NumericalLimit, "intermediate density left the representable range between " +
                                               describe(left) + " and " + describe(right) + " (" + e.what() +
                                               ")");
  }

  double rho_star;
  if (lo == hi) {
    rho_star = lo;
  } else {
    auto G = [&](double s) { return F(std::exp(s)); };
    const double slo = std::log(lo), shi = std::log(hi);
    const double glo = G(slo), ghi = G(shi);
    if ((glo > 0.0) == (ghi > 0.0) && glo != 0.0 && ghi != 0.0) {
      // Both ends within rounding of zero: the waves are near-degenerate.
      rho_star = std::abs(glo) <= std::abs(ghi) ? lo : hi;
    } else {
      rho_star = std::exp(find_root(G, slo, shi, solver_root_tolerance()));
    }
  }
  // Averaging the two curve values makes mirror-symmetric data give an
  // exactly symmetric intermediate velocity.
  out.mid = {rho_star, 0.5 * (phi1(rho_star) + phi2(rho_star))};
  return out;
}

inline std::string ecg_region_name(const TwoWaveOutcome& o) {
  if (!o.has_wave1) return o.rarefaction2 ? "boundary:R2" : "boundary:S2";
  if (!o.has_wave2) return o.rarefaction1 ? "boundary:R1" : "boundary:S1";
  return std::string(o.rarefaction1 ? "R1" : "S1") + (o.rarefaction2 ? "R2" : "S2");
}

inline std::string gcg_region_name(const TwoWaveOutcome& o) {
  if (!o.has_wave1 || !o.has_wave2) return ecg_region_name(o);
  if (o.rarefaction1) return o.rarefaction2 ? "I" : "II";
  return o.rarefaction2 ? "III" : "IV";
}

/// Builds the constant / wave / constant / wave / constant tiling.
/// `contacts` labels both waves as contact discontinuities (GCG, alpha = 1).
inline std::vector<WaveSegment> two_wave_segments(const PressureParams& p, const State& left, const State& right,
                                                  const TwoWaveOutcome& o, bool contacts) {
  std::vector<WaveSegment> segs;
  double cursor = -inf();
  auto push_wave = [&](WaveFamily fam, const State& a, const State& b, bool rarefaction) {
    const double lam_a = fam == WaveFamily::One ? eigenvalues(p, a).lambda1 : eigenvalues(p, a).lambda2;
    const double lam_b = fam == WaveFamily::One ? eigenvalues(p, b).lambda1 : eigenvalues(p, b).lambda2;
    if (contacts) {
      // Characteristic speed is constant along the curve; use the mean of
      // the two evaluations to keep the labeling symmetric.
      const double s = 0.5 * (lam_a + lam_b);
      segs.push_back(constant_segment(a, cursor, s));
      segs.push_back(jump_segment(WaveKind::Contact, a, b, s));
      cursor = s;
    } else if (rarefaction) {
      segs.push_back(constant_segment(a, cursor, lam_a));
      segs.push_back({WaveKind::RarefactionFan, lam_a, lam_b, Fan{fam, a, b}});
      cursor = lam_b;
    } else {
      // A shock whose densities agree to rounding has zero strength; its
      // speed is the characteristic speed, not the ill-conditioned quotient.
      const bool weak = std::abs(b.rho - a.rho) <= 1e-13 * a.rho;
      const double s = weak ? 0.5 * (lam_a + lam_b) : shock_speed(p, a, b);
      segs.push_back(constant_segment(a, cursor, s));
      segs.push_back(jump_segment(WaveKind::Shock, a, b, s));
      cursor = s;
    }
  };
  if (o.has_wave1) push_wave(WaveFamily::One, left, o.mid, o.rarefaction1);
  if (o.has_wave2) push_wave(WaveFamily::Two, o.has_wave1 ? o.mid : left, right, o.rarefaction2);
  segs.push_back(constant_segment(right, cursor, inf()));
  return segs;
}

inline RiemannSolution constant_solution(const PressureParams& p, const State& s) {
  RiemannSolution sol{p, s, s, {constant_segment(s, -inf(), inf())}, std::nullopt, "constant"};
  return sol;
}

}  // namespace detail

inline RiemannSolution solve_ecg(const PressureParams& p, const State& left, const State& right) {
  if (p.model != Model::ECG) throw Error(ErrorKind::UnsupportedModel, "solve_ecg: requires the ECG model");
  validate(p);
  detail::require_density(left.rho, "solve_ecg");
  detail::require_density(right.rho, "solve_ecg");
  if (left == right) return detail::constant_solution(p, left);
  const auto o = detail::intersect_curves(p, left, right);
  RiemannSolution sol{p, left, right, detail::two_wave_segments(p, left, right, o, false), o.mid,
                      detail::ecg_region_name(o)};
  return sol;
}

inline RiemannSolution solve_gcg(const PressureParams& p, const State& left, const State& right) {
  if (p.model != Model::GCG) throw Error(ErrorKind::UnsupportedModel, "solve_gcg: requires the GCG model");
  validate(p);
  detail::require_density(left.rho, "solve_gcg");
  detail::require_density(right.rho, "solve_gcg");
  if (left == right) return detail::constant_solution(p, left);

  if (in_delta_region_gcg(p, left, right)) {
    const double sigma = gcg_delta_speed(p, left, right);
    const double w = gcg_delta_weight_rate(p, left, right);
    const bool ok = gcg_entropy_window(p, left, right).contains(sigma);
    RiemannSolution sol{p, left, right, {}, std::nullopt, "V"};
    sol.segments.push_back(detail::constant_segment(left, -detail::inf(), sigma));
    sol.segments.push_back({WaveKind::DeltaShock, sigma, sigma, DeltaShock{sigma, sigma, w, left, right, ok}});
    sol.segments.push_back(detail::constant_segment(right, sigma, detail::inf()));
    return sol;
  }
  const auto o = detail::intersect_curves(p, left, right);
  const bool contacts = p.alpha == 1.0;
  RiemannSolution sol{p, left, right, detail::two_wave_segments(p, left, right, o, contacts), o.mid,
                      detail::gcg_region_name(o)};
  return sol;
}

/// Transport delta shock: sigma = (sqrt(rho-) u- + sqrt(rho+) u+)/(sqrt(rho-) + sqrt(rho+)),
/// weight rate sqrt(rho- rho+)(u- - u+).
inline DeltaShock transport_delta(const State& left, const State& right) {
  const double sl = std::sqrt(left.rho), sr = std::sqrt(right.rho);
  // A convex combination of u- and u+; clamp so rounding cannot leave the
  // interval when one density is tiny.
  double sigma = (sl * left.u + sr * right.u) / (sl + sr);
  const double lo = std::min(left.u, right.u), hi = std::max(left.u, right.u);
  sigma = std::clamp(sigma, lo, hi);
  const double w = sl * sr * (left.u - right.u);
  return {sigma, sigma, w, left, right, right.u <= sigma && sigma <= left.u};
}

inline RiemannSolution solve_transport(const State& left, const State& right) {
  const PressureParams p = make_transport();
  detail::require_density(left.rho, "solve_transport");
  detail::require_density(right.rho, "solve_transport");
  if (left == right) return detail::constant_solution(p, left);
  RiemannSolution sol{p, left, right, {}, std::nullopt, ""};
  if (left.u < right.u) {
    sol.region = "vacuum";
    sol.segments.push_back(detail::constant_segment(left, -detail::inf(), left.u));
    sol.segments.push_back({WaveKind::Vacuum, left.u, right.u, std::monostate{}});
    sol.segments.push_back(detail::constant_segment(right, right.u, detail::inf()));
  } else if (left.u == right.u) {
    sol.region = "contact";
    sol.segments.push_back(detail::constant_segment(left, -detail::inf(), left.u));
    sol.segments.push_back(detail::jump_segment(WaveKind::Contact, left, right, left.u));
    sol.segments.push_back(detail::constant_segment(right, left.u, detail::inf()));
  } else {
    sol.region = "delta";
    const DeltaShock d = transport_delta(left, right);
    sol.segments.push_back(detail::constant_segment(left, -detail::inf(), d.sigma));
    sol.segments.push_back({WaveKind::DeltaShock, d.sigma, d.sigma, d});
    sol.segments.push_back(detail::constant_segment(right, d.sigma, detail::inf()));
  }
  return sol;
}

inline RiemannSolution solve(const PressureParams& p, const State& left, const State& right) {
  switch (p.model) {
    case Model::ECG: return solve_ecg(p, left, right);
    case Model::GCG: return solve_gcg(p, left, right);
    case Model::Transport: validate(p); return solve_transport(left, right);
  }
  throw Error(ErrorKind::Internal, "solve: unknown model tag");
}

struct SampleResult {
  State state;
  bool in_vacuum = false;
  bool on_shock = false;
  bool on_delta = false;
};

/// State inside a rarefaction fan at xi, found by solving lambda_fam = xi in
/// ln(rho) between the edge densities.
inline State sample_fan(const PressureParams& p, const Fan& fan, double xi) {
  const auto lam = [&](double rho) {
    const State s{rho, rarefaction_u(p, fan.family, fan.head, rho)};
    const auto e = eigenvalues(p, s);
    return fan.family == WaveFamily::One ? e.lambda1 : e.lambda2;
  };
  const double rlo = std::min(fan.head.rho, fan.tail.rho);
  const double rhi = std::max(fan.head.rho, fan.tail.rho);
  auto g = [&](double s) { return lam(std::exp(s)) - xi; };
  const double s = find_root(g, std::log(rlo), std::log(rhi), detail::solver_root_tolerance());
  const double rho = std::exp(s);
  return {rho, rarefaction_u(p, fan.family, fan.head, rho)};
}

inline SampleResult sample(const RiemannSolution& sol, double xi) {
  for (const auto& seg : sol.segments) {
    if (!seg.is_point() || xi != seg.xi_lo) continue;
    if (const auto* d = std::get_if<DeltaShock>(&seg.payload)) return {d->left, false, false, true};
    const auto& j = std::get<Jump>(seg.payload);
    return {j.left, false, true, false};
  }
  for (const auto& seg : sol.segments) {
    if (seg.is_point() || xi > seg.xi_hi) continue;
    switch (seg.kind) {
      case WaveKind::Constant: return {std::get<State>(seg.payload)};
      case WaveKind::Vacuum: return {{0.0, xi}, true};
      case WaveKind::RarefactionFan: {
        const auto& fan = std::get<Fan>(seg.payload);
        if (xi <= seg.xi_lo) return {fan.head};
        if (xi >= seg.xi_hi) return {fan.tail};
        return {sample_fan(sol.model, fan, xi)};
      }
      default: break;
    }
  }
  return {sol.right};
}

inline double delta_weight_at(const RiemannSolution& sol, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "delta_weight_at: requires t >= 0");
  const DeltaShock* d = sol.delta();
  if (!d) throw Error(ErrorKind::Absent, "delta_weight_at: solution has no delta shock");
  return d->weight_rate * t;
}

}  // namespace ecg
