#pragma once

// Scalar root finders shared by the contact and Riemann solvers.
//
// All three methods stop on whichever comes first: |f(x)| <= residual_tol, or
// the step / bracket width dropping below step_tol * max(1, |x|).

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "swe/error.hpp"

namespace swe {

struct RootPolicy {
  double residual_tol = 1e-13;
  double step_tol = 1e-14;
  int max_iter = 200;

  void validate() const {
    if (!(residual_tol >= 0.0) || !(step_tol > 0.0) || max_iter < 1)
      throw Error(ErrorCode::InvalidArgument, "root policy needs residual_tol >= 0, step_tol > 0, max_iter >= 1");
  }

  RootPolicy scaled(double scale) const {
    RootPolicy p = *this;
    p.residual_tol *= scale;
    return p;
  }
};

/// Policy for the sign-driven bisections of the Riemann constructions.
inline constexpr RootPolicy kBisectionPolicy{1e-12, 1e-13, 200};

namespace detail {

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

inline bool collapsed(double width, double x, double tol) {
  return std::abs(width) <= tol * std::max(1.0, std::abs(x));
}

}  // namespace detail

/// Regula falsi with the Illinois modification. Requires f(lo) f(hi) <= 0.
template <class F>
double regula_falsi(F&& f, double lo, double hi, const RootPolicy& policy = {}) {
  policy.validate();
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (detail::sign_of(flo) == detail::sign_of(fhi))
    throw Error(ErrorCode::BadBracket, "regula falsi: no sign change on [" + std::to_string(lo) + ", " +
                                           std::to_string(hi) + "]");

  int retained = 0;  // +1: lo kept last time, -1: hi kept last time
  for (int it = 0; it < policy.max_iter; ++it) {
    double x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = lo + 0.5 * (hi - lo);
    const double fx = f(x);
    if (std::abs(fx) <= policy.residual_tol) return x;
    if (detail::sign_of(fx) == detail::sign_of(fhi)) {
      hi = x;
      fhi = fx;
      if (retained == +1) flo *= 0.5;
      retained = +1;
    } else {
      lo = x;
      flo = fx;
      if (retained == -1) fhi *= 0.5;
      retained = -1;
    }
    if (detail::collapsed(hi - lo, x, policy.step_tol)) return std::abs(flo) < std::abs(fhi) ? lo : hi;
  }
  throw Error(ErrorCode::ConvergenceFailure, "regula falsi did not converge");
}

/// Newton iteration. With a bracket, any iterate leaving it (or failing to
/// reduce |f|) is replaced by the bracket midpoint; without one the step is
/// halved until |f| decreases.
template <class F, class DF>
double newton_safeguarded(F&& f, DF&& df, double start, std::optional<std::pair<double, double>> bracket,
                          const RootPolicy& policy = {}) {
  policy.validate();
  double lo = 0.0, hi = 0.0, flo = 0.0;
  if (bracket) {
    lo = std::min(bracket->first, bracket->second);
    hi = std::max(bracket->first, bracket->second);
    flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (detail::sign_of(flo) == detail::sign_of(fhi))
      throw Error(ErrorCode::BadBracket, "newton: bracket has no sign change");
    if (!(start > lo && start < hi)) start = lo + 0.5 * (hi - lo);
  }

  double x = start;
  double fx = f(x);
  for (int it = 0; it < policy.max_iter; ++it) {
    if (std::abs(fx) <= policy.residual_tol) return x;
    if (bracket) {
      if (detail::sign_of(fx) == detail::sign_of(flo)) {
        lo = x;
        flo = fx;
      } else {
        hi = x;
      }
      if (detail::collapsed(hi - lo, x, policy.step_tol)) return x;
    }
    const double d = df(x);
    double next = x - fx / d;
    const bool usable = std::isfinite(next) && d != 0.0;
    double fnext = 0.0;
    if (bracket) {
      if (!usable || next <= lo || next >= hi) next = lo + 0.5 * (hi - lo);
      fnext = f(next);
      if (std::abs(fnext) > std::abs(fx)) {
        next = lo + 0.5 * (hi - lo);
        fnext = f(next);
      }
    } else {
      if (!usable) break;
      fnext = f(next);
      for (int k = 0; k < 60 && !(std::abs(fnext) <= std::abs(fx)); ++k) {
        next = x + 0.5 * (next - x);
        fnext = f(next);
      }
    }
    const double step = next - x;
    x = next;
    fx = fnext;
    if (detail::collapsed(step, x, policy.step_tol)) return x;
  }
  if (std::abs(fx) <= policy.residual_tol) return x;
  throw Error(ErrorCode::ConvergenceFailure, "newton did not converge");
}

/// Bisection driven only by the sign of f. Requires sign(f(lo)) != sign(f(hi)).
template <class F>
double bisect(F&& f, double lo, double hi, const RootPolicy& policy = kBisectionPolicy) {
  policy.validate();
  const double flo = f(lo);
  const double fhi = f(hi);
  const int slo = detail::sign_of(flo);
  const int shi = detail::sign_of(fhi);
  if (slo == 0) return lo;
  if (shi == 0) return hi;
  if (slo == shi) throw Error(ErrorCode::BadBracket, "bisect: no sign change");
  for (int it = 0; it < policy.max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    const double fm = f(mid);
    if (fm == 0.0 || std::abs(fm) <= policy.residual_tol) return mid;
    if (detail::sign_of(fm) == slo)
      lo = mid;
    else
      hi = mid;
    if (detail::collapsed(hi - lo, mid, policy.step_tol)) return lo + 0.5 * (hi - lo);
  }
  throw Error(ErrorCode::ConvergenceFailure, "bisect did not converge");
}

}  // namespace swe
