#pragma once

// Elementary wave curves in the (rho, u) phase plane for the extended and
// generalized Chaplygin gases, Lax admissibility, and classification of
// Riemann data into wave-pattern regions.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "ecg/error.hpp"
#include "ecg/models.hpp"
#include "ecg/numerics.hpp"

namespace ecg {

/// 1-waves travel backward, 2-waves forward.
enum class WaveFamily { One, Two };

constexpr std::string_view to_string(WaveFamily f) { return f == WaveFamily::One ? "1" : "2"; }

/// Tolerance in u used to decide that a right state sits on a wave curve.
inline constexpr double kBoundaryTolerance = 1e-12;

/// Radicand clamping threshold for the Hugoniot locus near its base point.
inline constexpr double kRadicandClamp = -1e-14;

namespace detail {

inline void require_wave_model(const PressureParams& p, const char* where) {
  if (p.model == Model::Transport)
    throw Error(ErrorKind::UnsupportedModel, std::string(where) + ": transport has no classical wave curves");
}

inline double rarefaction_exponent(const PressureParams& p) { return 0.5 * (p.alpha + 1.0); }

}  // namespace detail

/// Signed integral of c(rho)/rho from `from_rho` to `to_rho` by quadrature in
/// s = ln(rho). Uses only the coefficients, so it also serves the A = 0 and
/// B = 0 oracle comparisons that are not legal ECG parameter sets.
inline double rarefaction_integral_quadrature(const PressureParams& p, double from_rho, double to_rho,
                                              const ToleranceConfig& tol = quadrature_tolerance()) {
  detail::require_density(from_rho, "rarefaction_integral");
  detail::require_density(to_rho, "rarefaction_integral");
  if (from_rho == to_rho) return 0.0;
  const double A = p.A, B = p.B, n = p.n, a = p.alpha;
  auto integrand = [=](double s) {
    double c2 = 0.0;
    if (A != 0.0) c2 += A * n * std::exp((n - 1.0) * s);
    if (B != 0.0) c2 += a * B * std::exp(-(a + 1.0) * s);
    return std::sqrt(c2);
  };
  const double s0 = std::log(from_rho), s1 = std::log(to_rho);
  if (s0 <= s1) return integrate(integrand, s0, s1, tol);
  return -integrate(integrand, s1, s0, tol);
}

/// Closed form for A = 0: 2 sqrt(alpha B)/(alpha+1) (from^-k - to^-k), k = (alpha+1)/2.
inline double rarefaction_integral_gcg(const PressureParams& p, double from_rho, double to_rho) {
  const double k = detail::rarefaction_exponent(p);
  const double coeff = 2.0 * std::sqrt(p.alpha * p.B) / (p.alpha + 1.0);
  return coeff * (std::pow(from_rho, -k) - std::pow(to_rho, -k));
}

/// Integral of c/rho between two densities; closed form when A = 0.
inline double rarefaction_integral(const PressureParams& p, double from_rho, double to_rho) {
  if (p.A == 0.0) {
    detail::require_density(from_rho, "rarefaction_integral");
    detail::require_density(to_rho, "rarefaction_integral");
    return rarefaction_integral_gcg(p, from_rho, to_rho);
  }
  return rarefaction_integral_quadrature(p, from_rho, to_rho);
}

/// Velocity on the rarefaction curve of `fam` issued from `from` (the state
/// on the left of the wave), evaluated at density `rho`.
inline double rarefaction_u(const PressureParams& p, WaveFamily fam, const State& from, double rho) {
  detail::require_wave_model(p, "rarefaction_u");
  detail::require_density(rho, "rarefaction_u");
  detail::require_density(from.rho, "rarefaction_u");
  if (fam == WaveFamily::One) {
    if (rho > from.rho) throw Error(ErrorKind::Domain, "rarefaction_u: 1-rarefaction requires rho <= rho_left");
    return from.u + rarefaction_integral(p, rho, from.rho);
  }
  if (rho < from.rho) throw Error(ErrorKind::Domain, "rarefaction_u: 2-rarefaction requires rho >= rho_left");
  return from.u + rarefaction_integral(p, from.rho, rho);
}

/// (a - b)(P(a) - P(b)) / (a b); symmetric and nonnegative for monotone P.
inline double hugoniot_radicand(const PressureParams& p, double a, double b) {
  double dP = -p.B * (std::pow(a, -p.alpha) - std::pow(b, -p.alpha));
  if (p.A != 0.0) dP += p.A * (std::pow(a, p.n) - std::pow(b, p.n));
  return (1.0 / b - 1.0 / a) * dP;
}

namespace detail {
inline double clamped_sqrt_radicand(double r) {
  if (r >= 0.0) return std::sqrt(r);
  if (r >= kRadicandClamp) return 0.0;
  throw Error(ErrorKind::Internal, "shock_u: negative Hugoniot radicand " + std::to_string(r));
}
}  // namespace detail

/// Velocity on the shock curve of `fam` issued from `from` (left state).
/// A density equal to from.rho is the zero-strength limit and returns from.u.
inline double shock_u(const PressureParams& p, WaveFamily fam, const State& from, double rho) {
  detail::require_wave_model(p, "shock_u");
  detail::require_density(rho, "shock_u");
  detail::require_density(from.rho, "shock_u");
  if (fam == WaveFamily::One && rho < from.rho)
    throw Error(ErrorKind::Domain, "shock_u: 1-shock requires rho > rho_left");
  if (fam == WaveFamily::Two && rho > from.rho)
    throw Error(ErrorKind::Domain, "shock_u: 2-shock requires rho < rho_left");
  return from.u - detail::clamped_sqrt_radicand(hugoniot_radicand(p, rho, from.rho));
}

/// Full forward wave curve of `fam` through `from`: rarefaction branch on
/// one side of from.rho, shock branch on the other.
inline double wave_curve_u(const PressureParams& p, WaveFamily fam, const State& from, double rho) {
  const bool rarefaction = fam == WaveFamily::One ? rho <= from.rho : rho >= from.rho;
  return rarefaction ? rarefaction_u(p, fam, from, rho) : shock_u(p, fam, from, rho);
}

/// States that connect on the LEFT of `to` through a 2-wave: rarefaction
/// when rho < to.rho, shock when rho > to.rho.
inline double backward_two_curve_u(const PressureParams& p, const State& to, double rho) {
  detail::require_wave_model(p, "backward_two_curve_u");
  detail::require_density(rho, "backward_two_curve_u");
  if (rho <= to.rho) return to.u - rarefaction_integral(p, rho, to.rho);
  return to.u + detail::clamped_sqrt_radicand(hugoniot_radicand(p, rho, to.rho));
}

/// sigma = (rho+ u+ - rho- u-)/(rho+ - rho-), evaluated as
/// u- + rho+ (u+ - u-)/(rho+ - rho-) to limit cancellation.
inline double shock_speed(const PressureParams& /*p*/, const State& left, const State& right) {
  if (left.rho == right.rho)
    throw Error(ErrorKind::Degenerate, "shock_speed: equal densities; use contact or delta-shock logic");
  return left.u + right.rho * (right.u - left.u) / (right.rho - left.rho);
}

struct RankineHugoniotResidual {
  double mass;      // sigma [rho] - [rho u]
  double momentum;  // sigma [rho u] - [rho u^2 + P]
  double momentum_flux_jump;  // [rho u^2 + P], for relative scaling
};

inline RankineHugoniotResidual rankine_hugoniot_residual(const PressureParams& p, const State& left,
                                                         const State& right, double sigma) {
  const double jr = right.rho - left.rho;
  const double jm = right.rho * right.u - left.rho * left.u;
  const double jf = right.rho * right.u * right.u + pressure(p, right.rho) -
                    (left.rho * left.u * left.u + pressure(p, left.rho));
  return {sigma * jr - jm, sigma * jm - jf, jf};
}

/// Strict Lax inequalities for a 1- or 2-shock with speed sigma.
inline bool lax_check(const PressureParams& p, WaveFamily fam, const State& left, const State& right,
                      double sigma) {
  if (p.model == Model::Transport)
    throw Error(ErrorKind::UnsupportedModel, "lax_check: transport admits no classical shocks");
  const auto l = eigenvalues(p, left);
  const auto r = eigenvalues(p, right);
  if (fam == WaveFamily::One) return sigma < l.lambda1 && r.lambda1 < sigma && sigma < r.lambda2;
  return l.lambda1 < sigma && sigma < l.lambda2 && r.lambda2 < sigma;
}

// ---------------------------------------------------------------------------
// Region classification

enum class BoundaryCurve { None, R1, R2, S1, S2, BaseState };

constexpr std::string_view to_string(BoundaryCurve c) {
  switch (c) {
    case BoundaryCurve::None: return "none";
    case BoundaryCurve::R1: return "R1";
    case BoundaryCurve::R2: return "R2";
    case BoundaryCurve::S1: return "S1";
    case BoundaryCurve::S2: return "S2";
    case BoundaryCurve::BaseState: return "base";
  }
  return "?";
}

struct RegionECG {
  enum class Tag { R1R2, R1S2, S1R2, S1S2, OnBoundary };
  Tag tag = Tag::OnBoundary;
  BoundaryCurve curve = BoundaryCurve::None;

  friend bool operator==(const RegionECG&, const RegionECG&) = default;
};

constexpr std::string_view to_string(RegionECG::Tag t) {
  switch (t) {
    case RegionECG::Tag::R1R2: return "R1R2";
    case RegionECG::Tag::R1S2: return "R1S2";
    case RegionECG::Tag::S1R2: return "S1R2";
    case RegionECG::Tag::S1S2: return "S1S2";
    case RegionECG::Tag::OnBoundary: return "boundary";
  }
  return "?";
}

struct RegionGCG {
  enum class Tag { I, II, III, IV, V, OnBoundary };
  Tag tag = Tag::OnBoundary;
  BoundaryCurve curve = BoundaryCurve::None;
  /// Region V only: whether the delta-shock speed also satisfies the
  /// sqrt(alpha B) entropy window, which is narrower than the S_delta test
  /// when alpha < 1.
  std::optional<bool> delta_entropy;

  friend bool operator==(const RegionGCG&, const RegionGCG&) = default;
};

constexpr std::string_view to_string(RegionGCG::Tag t) {
  switch (t) {
    case RegionGCG::Tag::I: return "I";
    case RegionGCG::Tag::II: return "II";
    case RegionGCG::Tag::III: return "III";
    case RegionGCG::Tag::IV: return "IV";
    case RegionGCG::Tag::V: return "V";
    case RegionGCG::Tag::OnBoundary: return "boundary";
  }
  return "?";
}

namespace detail {

/// Shared ECG/GCG classification against the 1- and 2-curves through `left`.
/// Returns the ECG-style tag; GCG regions I..IV map onto the same patterns.
inline RegionECG classify_two_wave(const PressureParams& p, const State& left, const State& right) {
  if (std::abs(right.rho - left.rho) <= kBoundaryTolerance * left.rho &&
      std::abs(right.u - left.u) <= kBoundaryTolerance)
    return {RegionECG::Tag::OnBoundary, BoundaryCurve::BaseState};
  const double w1 = wave_curve_u(p, WaveFamily::One, left, right.rho);
  const double w2 = wave_curve_u(p, WaveFamily::Two, left, right.rho);
  const double d1 = right.u - w1;
  const double d2 = right.u - w2;
  if (std::abs(d1) <= kBoundaryTolerance)
    return {RegionECG::Tag::OnBoundary, right.rho < left.rho ? BoundaryCurve::R1 : BoundaryCurve::S1};
  if (std::abs(d2) <= kBoundaryTolerance)
    return {RegionECG::Tag::OnBoundary, right.rho > left.rho ? BoundaryCurve::R2 : BoundaryCurve::S2};
  // Above the 2-curve: the 1-wave is a rarefaction; above the 1-curve: the
  // 2-wave is a rarefaction.
  const bool r1 = d2 > 0.0;
  const bool r2 = d1 > 0.0;
  if (r1 && r2) return {RegionECG::Tag::R1R2, BoundaryCurve::None};
  if (r1) return {RegionECG::Tag::R1S2, BoundaryCurve::None};
  if (r2) return {RegionECG::Tag::S1R2, BoundaryCurve::None};
  return {RegionECG::Tag::S1S2, BoundaryCurve::None};
}

}  // namespace detail

inline RegionECG classify_ecg(const PressureParams& p, const State& left, const State& right) {
  if (p.model != Model::ECG) throw Error(ErrorKind::UnsupportedModel, "classify_ecg: requires the ECG model");
  validate(p);
  return detail::classify_two_wave(p, left, right);
}

/// u+ + sqrt(B) rho+^-k <= u- - sqrt(B) rho-^-k: the two shock-curve
/// asymptotes do not cross, so no classical solution exists.
inline bool in_delta_region_gcg(const PressureParams& p, const State& left, const State& right) {
  const double k = detail::rarefaction_exponent(p);
  const double sb = std::sqrt(p.B);
  return right.u + sb * std::pow(right.rho, -k) <= left.u - sb * std::pow(left.rho, -k);
}

/// Velocity on the S_delta curve through `left` at density rho.
inline double s_delta_curve_u(const PressureParams& p, const State& left, double rho) {
  const double k = detail::rarefaction_exponent(p);
  const double sb = std::sqrt(p.B);
  return left.u - sb * std::pow(left.rho, -k) - sb * std::pow(rho, -k);
}

/// Entropy window (u+ + sqrt(alpha B) rho+^-k, u- - sqrt(alpha B) rho-^-k).
struct EntropyWindow {
  double lo;
  double hi;
  bool contains(double s) const { return lo < s && s < hi; }
};

inline EntropyWindow gcg_entropy_window(const PressureParams& p, const State& left, const State& right) {
  const double k = detail::rarefaction_exponent(p);
  const double sab = std::sqrt(p.alpha * p.B);
  return {right.u + sab * std::pow(right.rho, -k), left.u - sab * std::pow(left.rho, -k)};
}

/// Delta-shock weight growth rate for GCG data with rho+ != rho-:
/// sqrt(rho+ rho- ((u+ - u-)^2 - (1/rho+ - 1/rho-)(B/rho+^alpha - B/rho-^alpha))),
/// and rho- u- - rho+ u+ when the densities agree.
inline double gcg_delta_weight_rate(const PressureParams& p, const State& left, const State& right) {
  if (left.rho == right.rho) return left.rho * left.u - right.rho * right.u;
  const double du = right.u - left.u;
  const double coupling = (1.0 / right.rho - 1.0 / left.rho) *
                          (p.B * std::pow(right.rho, -p.alpha) - p.B * std::pow(left.rho, -p.alpha));
  const double radicand = right.rho * left.rho * (du * du - coupling);
  if (radicand < 0.0) throw Error(ErrorKind::NotDeltaCase, "gcg_delta_weight_rate: negative radicand");
  return std::sqrt(radicand);
}

/// Delta-shock speed: (rho+ u+ - rho- u- + w')/(rho+ - rho-), or (u+ + u-)/2
/// for equal densities. When rho+ u+ - rho- u- < 0 the same root is taken
/// from the product of the roots of the speed quadratic to avoid cancellation.
inline double gcg_delta_speed(const PressureParams& p, const State& left, const State& right) {
  if (left.rho == right.rho) return 0.5 * (left.u + right.u);
  const double w = gcg_delta_weight_rate(p, left, right);
  const double X = right.rho * right.u - left.rho * left.u;
  if (X >= 0.0) return (X + w) / (right.rho - left.rho);
  const double Y = right.rho * right.u * right.u - left.rho * left.u * left.u -
                   p.B * (std::pow(right.rho, -p.alpha) - std::pow(left.rho, -p.alpha));
  return Y / (X - w);
}

/// Residual of (rho+ - rho-) s^2 - 2 (rho+ u+ - rho- u-) s + rho+ u+^2 - rho- u-^2 - B (rho+^-alpha - rho-^-alpha).
inline double gcg_delta_quadratic(const PressureParams& p, const State& left, const State& right, double s) {
  return (right.rho - left.rho) * s * s - 2.0 * (right.rho * right.u - left.rho * left.u) * s +
         right.rho * right.u * right.u - left.rho * left.u * left.u -
         p.B * (std::pow(right.rho, -p.alpha) - std::pow(left.rho, -p.alpha));
}

inline RegionGCG classify_gcg(const PressureParams& p, const State& left, const State& right) {
  if (p.model != Model::GCG) throw Error(ErrorKind::UnsupportedModel, "classify_gcg: requires the GCG model");
  validate(p);
  detail::require_density(left.rho, "classify_gcg");
  detail::require_density(right.rho, "classify_gcg");
  if (left == right) return {RegionGCG::Tag::OnBoundary, BoundaryCurve::BaseState, std::nullopt};
  if (in_delta_region_gcg(p, left, right)) {
    const double s = gcg_delta_speed(p, left, right);
    return {RegionGCG::Tag::V, BoundaryCurve::None, gcg_entropy_window(p, left, right).contains(s)};
  }
  const RegionECG r = detail::classify_two_wave(p, left, right);
  switch (r.tag) {
    case RegionECG::Tag::R1R2: return {RegionGCG::Tag::I, BoundaryCurve::None, std::nullopt};
    case RegionECG::Tag::R1S2: return {RegionGCG::Tag::II, BoundaryCurve::None, std::nullopt};
    case RegionECG::Tag::S1R2: return {RegionGCG::Tag::III, BoundaryCurve::None, std::nullopt};
    case RegionECG::Tag::S1S2: return {RegionGCG::Tag::IV, BoundaryCurve::None, std::nullopt};
    case RegionECG::Tag::OnBoundary: break;
  }
  return {RegionGCG::Tag::OnBoundary, r.curve, std::nullopt};
}

}  // namespace ecg
