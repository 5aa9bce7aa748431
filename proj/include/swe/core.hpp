#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>

#include "swe/error.hpp"

namespace swe {

/// Gravitational acceleration. Strictly positive.
class Gravity {
 public:
  constexpr Gravity() = default;
  explicit Gravity(double g) : value_(g) {
    if (!(g > 0.0) || !std::isfinite(g)) throw Error(ErrorCode::InvalidArgument, "gravity must be > 0");
  }

  constexpr double value() const noexcept { return value_; }
  double sqrt() const noexcept { return std::sqrt(value_); }

 private:
  double value_ = 9.8;
};

/// Water height h, velocity u and bottom level a.
struct State {
  double h = 0.0;
  double u = 0.0;
  double a = 0.0;

  static constexpr State dry(double a) { return State{0.0, 0.0, a}; }

  constexpr bool is_dry() const noexcept { return h == 0.0; }
  constexpr double discharge() const noexcept { return h * u; }

  friend constexpr bool operator==(const State&, const State&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const State& s) {
  return os << "(" << s.h << ", " << s.u << ", " << s.a << ")";
}

/// Mirror image under x -> -x: velocity changes sign.
constexpr State reflect(const State& s) noexcept { return State{s.h, -s.u, s.a}; }

inline double celerity(const State& s, Gravity g) { return std::sqrt(g.value() * s.h); }

struct Eigenvalues {
  double lambda1;
  double lambda2;
  double lambda3;
};

inline Eigenvalues eigenvalues(const State& s, Gravity g) {
  const double c = celerity(s, g);
  return {s.u - c, s.u + c, 0.0};
}

inline double froude(const State& s, Gravity g) { return s.u / celerity(s, g); }

enum class PhaseRegion { G1, G2Plus, G2Minus, G3, CPlus, CMinus };

constexpr const char* to_string(PhaseRegion r) {
  switch (r) {
    case PhaseRegion::G1: return "G1";
    case PhaseRegion::G2Plus: return "G2+";
    case PhaseRegion::G2Minus: return "G2-";
    case PhaseRegion::G3: return "G3";
    case PhaseRegion::CPlus: return "C+";
    case PhaseRegion::CMinus: return "C-";
  }
  return "?";
}

/// Region obtained by reflecting a state, see reflect().
constexpr PhaseRegion mirror(PhaseRegion r) {
  switch (r) {
    case PhaseRegion::G1: return PhaseRegion::G3;
    case PhaseRegion::G3: return PhaseRegion::G1;
    case PhaseRegion::G2Plus: return PhaseRegion::G2Minus;
    case PhaseRegion::G2Minus: return PhaseRegion::G2Plus;
    case PhaseRegion::CPlus: return PhaseRegion::CMinus;
    case PhaseRegion::CMinus: return PhaseRegion::CPlus;
  }
  return r;
}

/// Default width of the band treated as lying on a resonance curve.
inline double resonance_tolerance(const State& s, Gravity g) {
  return 1e-9 * std::max({1.0, std::abs(s.u), celerity(s, g)});
}

inline PhaseRegion classify_region(const State& s, Gravity g, double tol) {
  const double c = celerity(s, g);
  if (std::abs(s.u - c) <= tol && s.u >= 0.0) return PhaseRegion::CPlus;
  if (std::abs(s.u + c) <= tol) return PhaseRegion::CMinus;
  if (s.u - c > 0.0) return PhaseRegion::G1;
  if (s.u + c < 0.0) return PhaseRegion::G3;
  return s.u >= 0.0 ? PhaseRegion::G2Plus : PhaseRegion::G2Minus;
}

inline PhaseRegion classify_region(const State& s, Gravity g) {
  return classify_region(s, g, resonance_tolerance(s, g));
}

constexpr bool is_subcritical(PhaseRegion r) {
  return r == PhaseRegion::G2Plus || r == PhaseRegion::G2Minus;
}

struct Flux {
  double mass;
  double momentum;
};

/// Physical flux (hu, hu^2 + g h^2 / 2) of the conservative pair.
inline Flux flux(const State& s, Gravity g) {
  const double q = s.h * s.u;
  return {q, q * s.u + 0.5 * g.value() * s.h * s.h};
}

}  // namespace swe
