#pragma once

// Forward and backward wave curves of the two genuinely nonlinear families
// over a flat bottom, parameterized by the water height.

#include <cmath>

#include "swe/core.hpp"
#include "swe/error.hpp"

namespace swe {

enum class WaveFamily { One, Two, Three };
enum class CurveOrientation { Forward, Backward };

namespace detail {

inline void require_positive_heights(double h, double h0) {
  if (!(h > 0.0) || !(h0 > 0.0))
    throw Error(ErrorCode::NonPositiveHeight, "wave curves need h > 0 and h0 > 0");
}

inline void require_nonlinear(WaveFamily family) {
  if (family == WaveFamily::Three)
    throw Error(ErrorCode::InvalidArgument, "the stationary family has no shock/rarefaction curve");
}

// sqrt(g/2) (h - h0) sqrt(1/h + 1/h0)
inline double shock_term(double h, double h0, Gravity g) {
  return std::sqrt(0.5 * g.value()) * (h - h0) * std::sqrt(1.0 / h + 1.0 / h0);
}

inline double shock_term_dh(double h, double h0, Gravity g) {
  const double s = std::sqrt(1.0 / h + 1.0 / h0);
  return std::sqrt(0.5 * g.value()) * (s - (h - h0) / (2.0 * h * h * s));
}

// 2 sqrt(g) (sqrt(h) - sqrt(h0))
inline double rarefaction_term(double h, double h0, Gravity g) {
  return 2.0 * g.sqrt() * (std::sqrt(h) - std::sqrt(h0));
}

inline double rarefaction_term_dh(double h, Gravity g) { return std::sqrt(g.value() / h); }

}  // namespace detail

/// True when the curve point at height h lies on the shock branch. The kink
/// h == h0 is assigned to the rarefaction branch.
constexpr bool on_shock_branch(WaveFamily family, CurveOrientation orientation, double h, double h0) {
  const bool larger = h > h0;
  const bool smaller = h < h0;
  if (family == WaveFamily::One) return orientation == CurveOrientation::Forward ? larger : smaller;
  return orientation == CurveOrientation::Forward ? smaller : larger;
}

namespace detail {

// Signed offset: u(h) = u0 - offset for family One, u0 + offset for family Two.
inline double curve_offset(WaveFamily family, CurveOrientation orientation, double h, double h0, Gravity g) {
  return on_shock_branch(family, orientation, h, h0) ? shock_term(h, h0, g) : rarefaction_term(h, h0, g);
}

inline double curve_offset_dh(WaveFamily family, CurveOrientation orientation, double h, double h0, Gravity g) {
  return on_shock_branch(family, orientation, h, h0) ? shock_term_dh(h, h0, g) : rarefaction_term_dh(h, g);
}

}  // namespace detail

/// Psi_i (forward) or Phi_i (backward): zero iff (U.h, U.u) lies on the
/// i-wave curve through U0.
inline double curve_residual(WaveFamily family, CurveOrientation orientation, const State& U, const State& U0,
                             Gravity g) {
  detail::require_nonlinear(family);
  detail::require_positive_heights(U.h, U0.h);
  const double off = detail::curve_offset(family, orientation, U.h, U0.h, g);
  return family == WaveFamily::One ? U.u - U0.u + off : U.u - U0.u - off;
}

inline double u_on_curve(WaveFamily family, CurveOrientation orientation, const State& U0, double h, Gravity g) {
  detail::require_nonlinear(family);
  detail::require_positive_heights(h, U0.h);
  const double off = detail::curve_offset(family, orientation, h, U0.h, g);
  return family == WaveFamily::One ? U0.u - off : U0.u + off;
}

/// du/dh along the curve.
inline double du_dh_on_curve(WaveFamily family, CurveOrientation orientation, const State& U0, double h,
                             Gravity g) {
  detail::require_nonlinear(family);
  detail::require_positive_heights(h, U0.h);
  const double d = detail::curve_offset_dh(family, orientation, h, U0.h, g);
  return family == WaveFamily::One ? -d : d;
}

inline State state_on_curve(WaveFamily family, CurveOrientation orientation, const State& U0, double h,
                            Gravity g) {
  return State{h, u_on_curve(family, orientation, U0, h, g), U0.a};
}

/// Limit of the curve at h -> 0, i.e. the velocity of the dry edge of a
/// rarefaction reaching vacuum.
inline double dry_edge_velocity(WaveFamily family, const State& U0, Gravity g) {
  const double c0 = celerity(U0, g);
  return family == WaveFamily::One ? U0.u + 2.0 * c0 : U0.u - 2.0 * c0;
}

/// Phi_2(U; UR), positive when U lies above the backward 2-curve through UR.
inline double phi2(const State& U, const State& UR, Gravity g) {
  return curve_residual(WaveFamily::Two, CurveOrientation::Backward, U, UR, g);
}

/// Propagation speed of a flat-bottom discontinuity from mass conservation.
inline double shock_speed(const State& U0, const State& U, Gravity /*g*/) {
  if (U.h == U0.h) throw Error(ErrorCode::DegenerateJump, "shock speed undefined for equal heights");
  return (U.h * U.u - U0.h * U0.u) / (U.h - U0.h);
}

/// Shock speed from the curve parametrisation, l on the left and r on the
/// right. Stable for weak shocks where the mass quotient cancels.
inline double curve_shock_speed(WaveFamily family, const State& l, const State& r, Gravity g) {
  if (family == WaveFamily::One) return l.u - std::sqrt(g.value() * r.h * (l.h + r.h) / (2.0 * l.h));
  if (family == WaveFamily::Two) return r.u + std::sqrt(g.value() * l.h * (l.h + r.h) / (2.0 * r.h));
  throw Error(ErrorCode::InvalidArgument, "no shock speed for the contact family");
}

/// Residuals of the two flat-bottom jump conditions for speed sigma.
struct JumpResidual {
  double mass;
  double momentum;
};

inline JumpResidual rankine_hugoniot_residual(const State& l, const State& r, double sigma, Gravity g) {
  const Flux fl = flux(l, g);
  const Flux fr = flux(r, g);
  return {(fr.mass - fl.mass) - sigma * (r.h - l.h),
          (fr.momentum - fl.momentum) - sigma * (r.h * r.u - l.h * l.u)};
}

/// The point of the forward 1-shock curve reached by a zero-speed shock.
/// Also used on resonance points, where it returns U itself up to rounding.
inline State zero_speed_partner(const State& U, Gravity g) {
  const double h = U.h;
  const double hs = 0.5 * (-h + std::sqrt(h * h + 8.0 * h * U.u * U.u / g.value()));
  return State{hs, U.u * h / hs, U.a};
}

/// U^#: the unique state on the 1-shock curve of a supercritical U reached by
/// a shock of zero speed.
inline State zero_speed_state(const State& U, Gravity g) {
  if (!(U.h > 0.0)) throw Error(ErrorCode::NonPositiveHeight, "zero_speed_state needs h > 0");
  const PhaseRegion r = classify_region(U, g);
  if (r != PhaseRegion::G1 && r != PhaseRegion::CPlus)
    throw Error(ErrorCode::WrongRegion, std::string("zero_speed_state needs a supercritical state, got ") +
                                            to_string(r));
  if (r == PhaseRegion::CPlus) return U;
  return zero_speed_partner(U, g);
}

/// State inside a centred rarefaction fan at similarity speed xi. U0 is any
/// state of the fan (the Riemann invariant fixes the rest).
inline State rarefaction_fan_state(WaveFamily family, const State& U0, double xi, Gravity g) {
  detail::require_nonlinear(family);
  const double c0 = celerity(U0, g);
  const double c = family == WaveFamily::One ? (U0.u + 2.0 * c0 - xi) / 3.0 : (xi - U0.u + 2.0 * c0) / 3.0;
  if (c < 0.0) throw Error(ErrorCode::OutOfFan, "similarity speed beyond the dry edge of the fan");
  const double h = c * c / g.value();
  if (h == 0.0) return State::dry(U0.a);
  return State{h, family == WaveFamily::One ? xi + c : xi - c, U0.a};
}

}  // namespace swe
