#pragma once

// Equation-of-state family P = A rho^n - B / rho^alpha and its two limit
// systems, plus the eigenstructure of the resulting 2x2 isentropic system.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "ecg/error.hpp"

namespace ecg {

enum class Model { ECG, GCG, Transport };

constexpr std::string_view to_string(Model m) {
  switch (m) {
    case Model::ECG: return "ecg";
    case Model::GCG: return "gcg";
    case Model::Transport: return "transport";
  }
  return "?";
}

inline Model parse_model(std::string_view s) {
  if (s == "ecg") return Model::ECG;
  if (s == "gcg") return Model::GCG;
  if (s == "transport") return Model::Transport;
  throw Error(ErrorKind::Input, "unknown model tag '" + std::string(s) + "'");
}

/// Smallest density accepted by the equation of state. Anything below is a
/// domain error; vacuum only exists inside a RiemannSolution.
inline constexpr double kDensityFloor = 1e-300;

/// Model family (A, B, n, alpha) plus an explicit tag. The tag is never
/// inferred from A == 0 or B == 0, so a sweep can hold a tiny positive A
/// without silently switching to the GCG branch.
struct PressureParams {
  Model model = Model::ECG;
  double A = 0.0;
  double B = 0.0;
  double n = 1.0;
  double alpha = 1.0;

  friend bool operator==(const PressureParams&, const PressureParams&) = default;
};

struct State {
  double rho = 0.0;
  double u = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

inline std::string describe(const State& s) {
  std::ostringstream os;
  os.precision(17);
  os << "(rho=" << s.rho << ", u=" << s.u << ")";
  return os.str();
}

/// Throws InvalidParams when the tag's invariants do not hold.
inline void validate(const PressureParams& p) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::InvalidParams, std::string(to_string(p.model)) + ": " + why);
  };
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(p.A) || !finite(p.B) || !finite(p.n) || !finite(p.alpha)) fail("non-finite parameter");
  switch (p.model) {
    case Model::ECG:
      if (!(p.A > 0.0)) fail("requires A > 0");
      if (!(p.B > 0.0)) fail("requires B > 0");
      if (!(p.n >= 1.0 && p.n <= 3.0)) fail("requires 1 <= n <= 3");
      if (!(p.alpha > 0.0 && p.alpha <= 1.0)) fail("requires 0 < alpha <= 1");
      break;
    case Model::GCG:
      if (p.A != 0.0) fail("requires A = 0");
      if (!(p.B > 0.0)) fail("requires B > 0");
      if (!(p.alpha > 0.0 && p.alpha <= 1.0)) fail("requires 0 < alpha <= 1");
      break;
    case Model::Transport:
      if (p.A != 0.0 || p.B != 0.0) fail("requires A = B = 0");
      break;
  }
}

inline PressureParams make_ecg(double A, double B, double n, double alpha) {
  PressureParams p{Model::ECG, A, B, n, alpha};
  validate(p);
  return p;
}

inline PressureParams make_gcg(double B, double alpha) {
  PressureParams p{Model::GCG, 0.0, B, 1.0, alpha};
  validate(p);
  return p;
}

inline PressureParams make_transport() { return PressureParams{Model::Transport, 0.0, 0.0, 1.0, 1.0}; }

namespace detail {
inline void require_density(double rho, const char* where) {
  if (!(rho >= kDensityFloor) || !std::isfinite(rho)) {
    std::ostringstream os;
    os.precision(17);
    os << where << ": density " << rho << " outside (" << kDensityFloor << ", inf)";
    throw Error(ErrorKind::Domain, os.str());
  }
}
}  // namespace detail

inline double pressure(const PressureParams& p, double rho) {
  detail::require_density(rho, "pressure");
  if (p.model == Model::Transport) return 0.0;
  double P = -p.B * std::pow(rho, -p.alpha);
  if (p.A != 0.0) P += p.A * std::pow(rho, p.n);
  return P;
}

/// dP/drho = A n rho^(n-1) + alpha B / rho^(alpha+1).
inline double sound_speed_sq(const PressureParams& p, double rho) {
  detail::require_density(rho, "sound_speed_sq");
  if (p.model == Model::Transport) return 0.0;
  double c2 = p.alpha * p.B * std::pow(rho, -(p.alpha + 1.0));
  if (p.A != 0.0) c2 += p.A * p.n * std::pow(rho, p.n - 1.0);
  return c2;
}

struct Eigenvalues {
  double lambda1;
  double lambda2;
};

inline Eigenvalues eigenvalues(const PressureParams& p, const State& s) {
  const double c = std::sqrt(sound_speed_sq(p, s.rho));
  return {s.u - c, s.u + c};
}

/// grad(lambda_i) . r_i for the eigenvectors r_1 = (-rho, c), r_2 = (rho, c).
/// Identical for both families; zero marks linear degeneracy.
inline double genuine_nonlinearity_indicator(const PressureParams& p, double rho) {
  if (p.model == Model::Transport)
    throw Error(ErrorKind::UnsupportedModel, "genuine_nonlinearity_indicator: transport is linearly degenerate");
  detail::require_density(rho, "genuine_nonlinearity_indicator");
  const double a = p.alpha;
  const double poly = p.A != 0.0 ? p.A * p.n * std::pow(rho, p.n + a) : 0.0;
  const double num = poly * (p.n + 1.0) + (1.0 - a) * a * p.B;
  const double den = 2.0 * std::sqrt((poly + a * p.B) * std::pow(rho, a + 1.0));
  return num / den;
}

}  // namespace ecg
