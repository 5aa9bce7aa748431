#pragma once

// Zero-speed contacts across a jump of the bottom level: the cubic for the
// height on the far side, its two roots, and root selection.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "swe/core.hpp"
#include "swe/error.hpp"
#include "swe/numerics.hpp"

namespace swe {

/// 2g h^3 + (2g(a - a0 - h0) - u0^2) h^2 + h0^2 u0^2. Zero iff (h, h0 u0 / h, a)
/// shares discharge and Bernoulli head with U0.
inline double phi_cubic(const State& U0, double a, double h, Gravity g) {
  const double gv = g.value();
  const double q = U0.h * U0.u;
  return 2.0 * gv * h * h * h + (2.0 * gv * (a - U0.a - U0.h) - U0.u * U0.u) * h * h + q * q;
}

inline double phi_cubic_dh(const State& U0, double a, double h, Gravity g) {
  const double gv = g.value();
  return 6.0 * gv * h * h + 2.0 * (2.0 * gv * (a - U0.a - U0.h) - U0.u * U0.u) * h;
}

/// Positive critical point of phi_cubic.
inline double h_star(const State& U0, double a, Gravity g) {
  return (U0.u * U0.u + 2.0 * g.value() * (U0.a + U0.h - a)) / (3.0 * g.value());
}

/// Critical depth for the discharge of U0.
inline double h_min(const State& U0, Gravity g) {
  const double q = U0.h * U0.u;
  return std::cbrt(q * q / g.value());
}

/// Highest bottom level reachable from U0 by a stationary contact.
inline double a_max(const State& U0, Gravity g) {
  const double c = std::cbrt(g.value() * U0.h);
  const double v = std::cbrt(U0.u * U0.u);
  const double d = c - v;
  return U0.a + d * d * (2.0 * c + v) / (2.0 * g.value());
}

struct ContactRoots {
  double h1;
  double h2;
  double h_star;
  double h_min;
};

enum class ContactSide { SupercriticalSide, SubcriticalSide };

namespace detail {

// Levels within this distance above a_max are treated as the tangency case.
inline double a_max_band(const State& U0, double am) {
  return 1e-12 * std::max({1.0, std::abs(am), U0.h});
}

// Residuals are measured against the size of the cubic's own terms over the
// bracket [0, h_ref]; a fixed floor would leave shallow, slow states with a
// loose relative tolerance.
inline RootPolicy contact_policy(const State& U0, double a, double h_ref, Gravity g) {
  const double q = U0.h * U0.u;
  const double b = 2.0 * g.value() * (a - U0.a - U0.h) - U0.u * U0.u;
  const double scale = std::max({std::numeric_limits<double>::min(), q * q, 2.0 * g.value() * h_ref * h_ref * h_ref,
                                 std::abs(b) * h_ref * h_ref});
  return RootPolicy{}.scaled(scale);
}

struct RootSetup {
  double hs;
  double hm;
  bool tangent;
};

// nullopt: a above a_max (outside the tolerance band).
inline std::optional<RootSetup> prepare_roots(const State& U0, double a, Gravity g) {
  const double hs = h_star(U0, a, g);
  const double am = a_max(U0, g);
  if (a > am + a_max_band(U0, am)) return std::nullopt;
  const double hm = h_min(U0, g);
  const bool tangent = !(hs > 0.0) || phi_cubic(U0, a, hs, g) >= 0.0;
  return RootSetup{hs, hm, tangent};
}

inline double smaller_root(const State& U0, double a, const RootSetup& s, Gravity g) {
  if (s.tangent) return std::min(s.hm, s.hs);
  const auto f = [&](double h) { return phi_cubic(U0, a, h, g); };
  const double hi = f(s.hm) <= 0.0 ? s.hm : s.hs;
  return regula_falsi(f, 0.0, hi, contact_policy(U0, a, hi, g));
}

inline double larger_root(const State& U0, double a, const RootSetup& s, Gravity g) {
  if (s.tangent) return std::max(s.hm, s.hs);
  const auto f = [&](double h) { return phi_cubic(U0, a, h, g); };
  const auto df = [&](double h) { return phi_cubic_dh(U0, a, h, g); };
  const RootPolicy policy = contact_policy(U0, a, std::max(s.hs, s.hm), g);
  const double start = std::max(s.hs, s.hm) + 1.0;
  double h_big = start;
  for (int k = 0; f(h_big) <= 0.0; ++k) {
    if (k > 200) throw Error(ErrorCode::ConvergenceFailure, "contact root: no upper bracket");
    h_big *= 2.0;
  }
  return newton_safeguarded(f, df, start, std::pair{s.hs, h_big}, policy);
}

}  // namespace detail

/// Both roots of phi_cubic, or nullopt when a exceeds a_max(U0).
inline std::optional<ContactRoots> contact_roots(const State& U0, double a, Gravity g) {
  if (!(U0.h > 0.0)) throw Error(ErrorCode::NonPositiveHeight, "contact_roots needs h0 > 0");
  if (U0.u == 0.0) {
    const double h2 = U0.h + U0.a - a;
    if (!(h2 > 0.0)) return std::nullopt;
    return ContactRoots{0.0, h2, h_star(U0, a, g), 0.0};
  }
  const auto setup = detail::prepare_roots(U0, a, g);
  if (!setup) return std::nullopt;
  return ContactRoots{detail::smaller_root(U0, a, *setup, g), detail::larger_root(U0, a, *setup, g), setup->hs,
                      setup->hm};
}

/// Side of the resonance curve a contact from a state of region r stays on.
constexpr ContactSide default_contact_side(PhaseRegion r) {
  return is_subcritical(r) ? ContactSide::SubcriticalSide : ContactSide::SupercriticalSide;
}

/// Contact from U0 to bottom level a on the requested side; nullopt when
/// no such contact exists.
inline std::optional<State> admissible_contact(const State& U0, double a, ContactSide side, Gravity g) {
  if (!(U0.h > 0.0)) throw Error(ErrorCode::NonPositiveHeight, "admissible_contact needs h0 > 0");
  if (a == U0.a) return U0;
  double h = 0.0;
  if (U0.u == 0.0) {
    if (side == ContactSide::SupercriticalSide) return std::nullopt;
    h = U0.h + U0.a - a;
  } else {
    const auto setup = detail::prepare_roots(U0, a, g);
    if (!setup) return std::nullopt;
    h = side == ContactSide::SupercriticalSide ? detail::smaller_root(U0, a, *setup, g)
                                               : detail::larger_root(U0, a, *setup, g);
  }
  if (!(h > 0.0)) return std::nullopt;
  return State{h, U0.h * U0.u / h, a};
}

/// Contact selected by the monotonicity rule: the result stays in the
/// closure of U0's region.
inline std::optional<State> admissible_contact(const State& U0, double a, Gravity g) {
  return admissible_contact(U0, a, default_contact_side(classify_region(U0, g)), g);
}

}  // namespace swe
