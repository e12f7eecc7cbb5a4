#pragma once

// Minimal SVG line plots (800x600) for solution profiles and phase planes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ecg/solver.hpp"
#include "ecg/waves.hpp"

namespace ecg::svg {

struct Series {
  std::string label;
  std::string color = "#1f77b4";
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
};

struct Marker {
  std::string label;
  double x = 0.0;
  double y = 0.0;
  std::string color = "#000000";
};

struct VerticalLine {
  std::string label;
  double x = 0.0;
  std::string color = "#d62728";
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<Marker> markers;
  std::vector<VerticalLine> lines;
  // Optional clip window for y; points outside are dropped.
  double y_clip_lo = -std::numeric_limits<double>::infinity();
  double y_clip_hi = std::numeric_limits<double>::infinity();
};

namespace detail {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 80, kRight = 170, kTop = 50, kBottom = 60;

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

inline double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return (r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0) * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    double pad = 0.05 * (hi - lo);
    if (pad == 0.0) pad = std::max(0.5, 0.05 * std::abs(lo));
    lo -= pad;
    hi += pad;
  }
};

}  // namespace detail

inline std::string render(const Plot& plot) {
  using namespace detail;
  auto keep = [&](double y) { return std::isfinite(y) && y >= plot.y_clip_lo && y <= plot.y_clip_hi; };
  Range xr, yr;
  for (const auto& s : plot.series)
    for (const auto& [x, y] : s.points)
      if (keep(y)) xr.add(x), yr.add(y);
  for (const auto& m : plot.markers) xr.add(m.x), yr.add(m.y);
  for (const auto& l : plot.lines) xr.add(l.x);
  xr.finish();
  yr.finish();

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return kTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  o << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
    << escape(plot.title) << "</text>\n";
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
    << "\" fill=\"none\" stroke=\"#444\"/>\n";

  // ticks
  const double xs = nice_step(xr.hi - xr.lo, 8), ys = nice_step(yr.hi - yr.lo, 8);
  for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi; t += xs) {
    const double tx = sx(t);
    o << "<line x1=\"" << num(tx) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(tx) << "\" y2=\""
      << num(kTop + ph + 5) << "\" stroke=\"#444\"/>";
    o << "<text x=\"" << num(tx) << "\" y=\"" << num(kTop + ph + 20) << "\" text-anchor=\"middle\" font-size=\"11\">"
      << num(std::abs(t) < 1e-12 * xs ? 0.0 : t) << "</text>\n";
  }
  for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi; t += ys) {
    const double ty = sy(t);
    o << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(ty) << "\" x2=\"" << num(kLeft) << "\" y2=\"" << num(ty)
      << "\" stroke=\"#444\"/>";
    o << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(ty + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
      << num(std::abs(t) < 1e-12 * ys ? 0.0 : t) << "</text>\n";
  }
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15)
    << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(plot.x_label) << "</text>\n";
  o << "<text x=\"20\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
    << num(kTop + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n";

  // data
  int legend_row = 0;
  auto legend = [&](const std::string& label, const std::string& color, bool dashed) {
    const double ly = kTop + 10 + 20 * legend_row++;
    const double lx = kLeft + pw + 15;
    o << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 25) << "\" y2=\"" << num(ly)
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"" << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>";
    o << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4) << "\" font-size=\"12\">" << escape(label)
      << "</text>\n";
  };
  for (const auto& s : plot.series) {
    // Break the polyline wherever points are clipped.
    std::vector<std::vector<std::pair<double, double>>> runs(1);
    for (const auto& p : s.points) {
      if (keep(p.second)) runs.back().push_back(p);
      else if (!runs.back().empty()) runs.emplace_back();
    }
    for (const auto& run : runs) {
      if (run.size() < 2) continue;
      o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\""
        << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
      for (const auto& [x, y] : run) o << num(sx(x)) << ',' << num(sy(y)) << ' ';
      o << "\"/>\n";
    }
    if (!s.label.empty()) legend(s.label, s.color, s.dashed);
  }
  for (const auto& l : plot.lines) {
    o << "<line x1=\"" << num(sx(l.x)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(sx(l.x)) << "\" y2=\""
      << num(kTop + ph) << "\" stroke=\"" << l.color << "\" stroke-width=\"2\" stroke-dasharray=\"2,3\"/>\n";
    if (!l.label.empty()) legend(l.label, l.color, true);
  }
  for (const auto& m : plot.markers) {
    o << "<circle cx=\"" << num(sx(m.x)) << "\" cy=\"" << num(sy(m.y)) << "\" r=\"5\" fill=\"" << m.color << "\"/>";
    o << "<text x=\"" << num(sx(m.x) + 8) << "\" y=\"" << num(sy(m.y) - 8) << "\" font-size=\"12\">" << escape(m.label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

/// Profiles of density and velocity against xi = x/t.
inline std::pair<Plot, Plot> profile_plots(const RiemannSolution& sol, int samples = 801) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : sol.segments) {
    if (std::isfinite(s.xi_lo)) lo = std::min(lo, s.xi_lo);
    if (std::isfinite(s.xi_hi)) hi = std::max(hi, s.xi_hi);
  }
  if (!std::isfinite(lo)) lo = hi = 0.0;
  const double pad = 0.5 * std::max(hi - lo, 1.0);
  lo -= pad;
  hi += pad;

  Plot rho{"density, region " + sol.region, "xi = x/t", "rho", {}, {}, {}};
  Plot vel{"velocity, region " + sol.region, "xi = x/t", "u", {}, {}, {}};
  Series rs{"rho", "#1f77b4", {}, false}, us{"u", "#2ca02c", {}, false};
  for (int i = 0; i < samples; ++i) {
    const double xi = lo + (hi - lo) * i / (samples - 1);
    const auto st = sample(sol, xi).state;
    rs.points.emplace_back(xi, st.rho);
    us.points.emplace_back(xi, st.u);
  }
  rho.series.push_back(std::move(rs));
  vel.series.push_back(std::move(us));
  if (const auto* d = sol.delta()) {
    const std::string label = "delta, w' = " + detail::num(d->weight_rate);
    rho.lines.push_back({label, d->sigma, "#d62728"});
    vel.lines.push_back({label, d->sigma, "#d62728"});
    vel.markers.push_back({"u_delta", d->sigma, d->u_delta, "#d62728"});
  }
  return {std::move(rho), std::move(vel)};
}

/// Wave curves through the left state in the (u, rho) plane, the backward
/// 2-curves through the right state, and the delta boundary for GCG.
inline Plot phase_plot(const RiemannSolution& sol, int samples = 400) {
  const auto& p = sol.model;
  Plot plot{"phase plane, region " + sol.region, "u", "rho", {}, {}, {}};
  const double rmin = 0.2 * std::min(sol.left.rho, sol.right.rho);
  const double rmax = 3.0 * std::max(sol.left.rho, sol.right.rho);
  const double uspan = std::max(std::abs(sol.left.u - sol.right.u), 1.0);

  auto curve = [&](const std::string& label, const std::string& color, bool dashed, double from, double to,
                   auto&& u_of_rho) {
    Series s{label, color, {}, dashed};
    for (int i = 0; i < samples; ++i) {
      const double r = from * std::pow(to / from, double(i) / (samples - 1));
      try {
        s.points.emplace_back(u_of_rho(r), r);
      } catch (const Error&) {
      }
    }
    // phase plane puts u horizontally; swap into (x, y) = (u, rho)
    plot.series.push_back(std::move(s));
  };

  if (p.model != Model::Transport) {
    const State L = sol.left, R = sol.right;
    curve("R1 / S1 from left", "#1f77b4", false, rmin, rmax,
          [&](double r) { return wave_curve_u(p, WaveFamily::One, L, r); });
    curve("R2 / S2 into right", "#ff7f0e", false, rmin, rmax, [&](double r) { return backward_two_curve_u(p, R, r); });
    if (p.model == Model::GCG)
      curve("delta boundary", "#9467bd", true, rmin, rmax, [&](double r) { return s_delta_curve_u(p, L, r); });
  }
  plot.markers.push_back({"left", sol.left.u, sol.left.rho, "#000000"});
  plot.markers.push_back({"right", sol.right.u, sol.right.rho, "#000000"});
  if (sol.intermediate) plot.markers.push_back({"*", sol.intermediate->u, sol.intermediate->rho, "#d62728"});

  // The phase curves live in (u, rho); clip by u rather than by rho.
  const double ulo = std::min(sol.left.u, sol.right.u) - 2.0 * uspan;
  const double uhi = std::max(sol.left.u, sol.right.u) + 2.0 * uspan;
  for (auto& s : plot.series) {
    std::vector<std::pair<double, double>> kept;
    for (const auto& [u, r] : s.points)
      if (std::isfinite(u) && u >= ulo && u <= uhi) kept.emplace_back(u, r);
    s.points = std::move(kept);
  }
  return plot;
}

}  // namespace ecg::svg
