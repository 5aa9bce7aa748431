#pragma once

// Godunov finite-volume scheme built on the exact Riemann solver. The bottom
// is piecewise constant per cell, so the update is a flux difference of the
// one-sided interface traces.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "swe/core.hpp"
#include "swe/error.hpp"
#include "swe/riemann.hpp"

namespace swe {

struct Grid {
  double x0 = -1.0;
  double x1 = 1.0;
  std::vector<State> cells;

  std::size_t size() const { return cells.size(); }
  double dx() const { return (x1 - x0) / static_cast<double>(cells.size()); }
  double edge(std::size_t i) const {
    return x0 + (x1 - x0) * (static_cast<double>(i) / static_cast<double>(cells.size()));
  }
  double center(std::size_t i) const { return 0.5 * (edge(i) + edge(i + 1)); }
};

enum class Boundary { Transmissive };

struct SchemeConfig {
  double cfl = 0.75;
  SolveOptions solver{};
  Boundary boundary = Boundary::Transmissive;
  Gravity g{};

  void validate() const {
    if (!(cfl > 0.0) || cfl > 1.0) throw Error(ErrorCode::ConfigError, "cfl must lie in (0, 1]");
    if (solver.preference.empty()) throw Error(ErrorCode::ConfigError, "empty solver preference");
  }
};

/// One-sided states at an interface, U(0-) and U(0+).
struct InterfaceTrace {
  State left;
  State right;
  ConstructionTag tag = ConstructionTag::A1;
  bool mirrored = false;
  double max_speed = 0.0;  // fastest wave of the local fan
};

inline InterfaceTrace interface_trace(const State& L, const State& R, Gravity g, const SolveOptions& opt = {}) {
  const RiemannSolution sol = solve(L, R, g, opt);
  InterfaceTrace tr{sample(sol, 0.0, g, Side::Left), sample(sol, 0.0, g, Side::Right), sol.tag, sol.mirrored, 0.0};
  for (const auto& w : sol.waves) tr.max_speed = std::max({tr.max_speed, std::abs(w.speed_lo), std::abs(w.speed_hi)});
  return tr;
}

inline double max_characteristic_speed(const Grid& grid, Gravity g) {
  double s = 0.0;
  for (const auto& c : grid.cells) s = std::max(s, std::abs(c.u) + celerity(c, g));
  return s;
}

/// Largest stable step for the configured CFL number.
inline double cfl_dt(const Grid& grid, const SchemeConfig& cfg) {
  if (grid.cells.empty()) throw Error(ErrorCode::InvalidArgument, "empty grid");
  const double s = max_characteristic_speed(grid, cfg.g);
  if (s == 0.0) throw Error(ErrorCode::ZeroWaveSpeed, "all characteristic speeds vanish");
  return cfg.cfl * grid.dx() / s;
}

struct StepInfo {
  double max_fan_speed = 0.0;
};

/// Traces at the N+1 interfaces; interface k sits between cells k-1 and k,
/// with the transmissive ghosts copying the outermost cells.
inline std::vector<InterfaceTrace> interface_traces(const Grid& grid, const SchemeConfig& cfg) {
  const std::size_t n = grid.size();
  std::vector<InterfaceTrace> traces(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const State& L = grid.cells[k == 0 ? 0 : k - 1];
    const State& R = grid.cells[k == n ? n - 1 : k];
    if (L == R) {
      traces[k] = InterfaceTrace{L, R, ConstructionTag::A1, false, 0.0};
      continue;
    }
    try {
      traces[k] = interface_trace(L, R, cfg.g, cfg.solver);
    } catch (const InterfaceError&) {
      throw;
    } catch (const Error& e) {
      throw InterfaceError(e.code(), static_cast<std::ptrdiff_t>(k), e.what());
    }
  }
  return traces;
}

/// One quasi-conservative update of (h, hu); a is left untouched.
inline Grid step(const Grid& grid, double dt, const SchemeConfig& cfg, StepInfo* info = nullptr) {
  if (grid.cells.empty()) throw Error(ErrorCode::InvalidArgument, "empty grid");
  const std::vector<InterfaceTrace> traces = interface_traces(grid, cfg);
  const double r = dt / grid.dx();
  Grid out = grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Flux fr = flux(traces[i + 1].left, cfg.g);
    const Flux fl = flux(traces[i].right, cfg.g);
    const double dm = fr.mass - fl.mass;
    const double dq = fr.momentum - fl.momentum;
    if (dm == 0.0 && dq == 0.0) continue;
    const State& c = grid.cells[i];
    double h = c.h - r * dm;
    const double q = c.h * c.u - r * dq;
    if (h < -1e-12) throw Error(ErrorCode::NegativeHeight, "cell " + std::to_string(i) + " height " + std::to_string(h));
    if (h <= 0.0) {
      out.cells[i] = State::dry(c.a);
    } else {
      out.cells[i] = State{h, q / h, c.a};
    }
  }
  if (info) {
    info->max_fan_speed = 0.0;
    for (const auto& t : traces) info->max_fan_speed = std::max(info->max_fan_speed, t.max_speed);
  }
  return out;
}

/// Piecewise-constant initial data: pieces[k] holds on (breaks[k-1], breaks[k]).
struct PiecewiseConstant {
  std::vector<double> breaks;
  std::vector<State> pieces;

  static PiecewiseConstant riemann(const State& L, const State& R, double x = 0.0) { return {{x}, {L, R}}; }
};

/// Exact cell averages of (h, hu, a). Cells covered by a single piece get
/// that piece's state unchanged.
inline Grid init_cell_averages(const PiecewiseConstant& init, double x0, double x1, std::size_t n) {
  if (n < 1 || !(x1 > x0)) throw Error(ErrorCode::InvalidArgument, "grid needs n >= 1 and x1 > x0");
  if (init.pieces.size() != init.breaks.size() + 1)
    throw Error(ErrorCode::LengthMismatch, "need one more piece than breaks");
  if (!std::is_sorted(init.breaks.begin(), init.breaks.end()))
    throw Error(ErrorCode::InvalidArgument, "breaks must be sorted");
  Grid grid{x0, x1, std::vector<State>(n)};
  const double dx = grid.dx();
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = grid.edge(i), hi = grid.edge(i + 1);
    double m = 0.0, q = 0.0, a = 0.0;
    std::size_t covering = init.pieces.size();
    for (std::size_t k = 0; k < init.pieces.size(); ++k) {
      const double plo = k == 0 ? lo : std::max(lo, init.breaks[k - 1]);
      const double phi = k == init.breaks.size() ? hi : std::min(hi, init.breaks[k]);
      const double w = phi - plo;
      if (!(w > 0.0)) continue;
      if (w >= hi - lo) covering = k;
      const State& s = init.pieces[k];
      m += w * s.h;
      q += w * s.h * s.u;
      a += w * s.a;
    }
    if (covering < init.pieces.size()) {
      grid.cells[i] = init.pieces[covering];
    } else {
      const double h = m / dx;
      grid.cells[i] = h > 0.0 ? State{h, q / m, a / dx} : State::dry(a / dx);
    }
  }
  return grid;
}

struct AdvanceReport {
  std::size_t steps = 0;
  double time = 0.0;
  double max_courant = 0.0;  // largest fan speed times dt / dx seen
  std::vector<std::string> warnings;
};

/// Marches to t_end; the last step is shortened to land on t_end exactly.
inline Grid advance(Grid grid, double t_end, const SchemeConfig& cfg, AdvanceReport* report = nullptr) {
  cfg.validate();
  if (!(t_end >= 0.0)) throw Error(ErrorCode::ConfigError, "t_end must be >= 0");
  AdvanceReport rep;
  if (cfg.cfl > 0.5)
    rep.warnings.push_back("cfl " + std::to_string(cfg.cfl) + " exceeds 1/2; neighbouring fans may interact");
  double t = 0.0;
  while (t < t_end) {
    double dt = t_end - t;
    try {
      dt = std::min(dt, cfl_dt(grid, cfg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroWaveSpeed) throw;
    }
    const bool last = t + dt >= t_end;
    StepInfo info;
    grid = step(grid, dt, cfg, &info);
    rep.max_courant = std::max(rep.max_courant, info.max_fan_speed * dt / grid.dx());
    t = last ? t_end : t + dt;
    ++rep.steps;
  }
  rep.time = t;
  if (report) *report = std::move(rep);
  return grid;
}

}  // namespace swe
