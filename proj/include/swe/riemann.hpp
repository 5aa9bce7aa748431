#pragma once

// Exact Riemann solver over a bottom step: the six wave-pattern
// constructions, the classification of multiplicity, and sampling of the
// self-similar solution.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swe/core.hpp"
#include "swe/error.hpp"
#include "swe/numerics.hpp"
#include "swe/stationary_contact.hpp"
#include "swe/wave_curves.hpp"

namespace swe {

enum class ConstructionTag { A1, A2, A3, B1, B2, B3 };

inline constexpr std::array<ConstructionTag, 6> kAllTags{ConstructionTag::A1, ConstructionTag::A2,
                                                         ConstructionTag::A3, ConstructionTag::B1,
                                                         ConstructionTag::B2, ConstructionTag::B3};

constexpr std::string_view to_string(ConstructionTag t) {
  switch (t) {
    case ConstructionTag::A1: return "A1";
    case ConstructionTag::A2: return "A2";
    case ConstructionTag::A3: return "A3";
    case ConstructionTag::B1: return "B1";
    case ConstructionTag::B2: return "B2";
    case ConstructionTag::B3: return "B3";
  }
  return "?";
}

inline std::optional<ConstructionTag> parse_tag(std::string_view s) {
  for (ConstructionTag t : kAllTags) {
    const std::string_view name = to_string(t);
    if (s.size() == 2 && (s[0] == name[0] || s[0] == name[0] - 'A' + 'a') && s[1] == name[1]) return t;
  }
  return std::nullopt;
}

constexpr bool is_regime_a(ConstructionTag t) {
  return t == ConstructionTag::A1 || t == ConstructionTag::A2 || t == ConstructionTag::A3;
}

enum class WaveKind { Shock, Rarefaction, StationaryContact, DryFront };

constexpr std::string_view to_string(WaveKind k) {
  switch (k) {
    case WaveKind::Shock: return "shock";
    case WaveKind::Rarefaction: return "rarefaction";
    case WaveKind::StationaryContact: return "stationary-contact";
    case WaveKind::DryFront: return "dry-front";
  }
  return "?";
}

/// One elementary wave. Shocks and contacts have speed_lo == speed_hi; for a
/// rarefaction they are the head and tail speeds, for a dry front the speeds
/// of its two edges.
struct Wave {
  WaveKind kind;
  WaveFamily family;
  double speed_lo;
  double speed_hi;
  State left;
  State right;
};

struct NamedState {
  std::string name;
  State state;
};

struct RiemannSolution {
  ConstructionTag tag = ConstructionTag::A1;
  bool mirrored = false;  // built on the reflected problem and mapped back
  std::vector<State> states;
  std::vector<Wave> waves;
  std::vector<NamedState> named;

  const State& left() const { return states.front(); }
  const State& right() const { return states.back(); }

  std::optional<State> find(std::string_view name) const {
    for (const auto& n : named)
      if (n.name == name) return n.state;
    return std::nullopt;
  }
};

/// How the composite-curve constructions locate U_M.
enum class CompositeAlgorithm {
  PhiBisection,   // bisection on the sign of Phi_2 at the contact image
  LevelMismatch,  // bisection on the bottom level implied by the discharge line
};

struct ConstructOptions {
  CompositeAlgorithm algorithm = CompositeAlgorithm::PhiBisection;
};

namespace detail {

inline double u_w1(const State& U0, double h, Gravity g) {
  return u_on_curve(WaveFamily::One, CurveOrientation::Forward, U0, h, g);
}

inline State on_w1(const State& U0, double h, Gravity g) { return State{h, u_w1(U0, h, g), U0.a}; }

inline double u_w2b(const State& UR, double h, Gravity g) {
  return u_on_curve(WaveFamily::Two, CurveOrientation::Backward, UR, h, g);
}

inline double speed_scale(const State& a, const State& b, Gravity g) {
  return std::max({1.0, std::abs(a.u), std::abs(b.u), celerity(a, g), celerity(b, g)});
}

// Contact on the requested side, snapping to the tangent state when a sits a
// hair above a_max (the endpoints of level searches land there).
inline State contact_or_tangent(const State& U, double a, ContactSide side, Gravity g) {
  if (auto c = admissible_contact(U, a, side, g)) return *c;
  const double am = a_max(U, g);
  const double hm = h_min(U, g);
  if (a - am <= 1e-11 * std::max(1.0, std::abs(am)) && hm > 0.0) return State{hm, U.h * U.u / hm, a};
  throw Error(ErrorCode::NoStationaryContact, "bottom level above a_max for the contact");
}

inline State require_contact(const State& U, double a, ContactSide side, Gravity g) {
  if (auto c = admissible_contact(U, a, side, g)) return *c;
  throw Error(ErrorCode::NoStationaryContact, "bottom level above a_max for the contact");
}

// Height on W1(L) where the velocity vanishes; nullopt if u < 0 along all of it.
inline std::optional<double> w1_zero_velocity_height(const State& L, Gravity g) {
  if (L.u == 0.0) return L.h;
  if (L.u < 0.0) {
    const double s = std::sqrt(L.h) + L.u / (2.0 * g.sqrt());
    if (!(s > 0.0)) return std::nullopt;
    return s * s;
  }
  const auto f = [&](double h) { return u_w1(L, h, g); };
  double hi = 2.0 * L.h;
  while (f(hi) > 0.0) hi *= 2.0;
  return regula_falsi(f, L.h, hi, RootPolicy{}.scaled(std::max(1.0, L.u)));
}

// Height of W1(L) on C+ (rarefaction side); L must lie on or below C+.
inline double w1_c_plus_height(const State& L, Gravity g) {
  const double c = (L.u + 2.0 * celerity(L, g)) / 3.0;
  return c * c / g.value();
}

inline State w1_c_plus_state(const State& L, Gravity g) {
  const double sg = g.sqrt();
  const double r = L.u / (3.0 * sg) + 2.0 / 3.0 * std::sqrt(L.h);
  return State{r * r, L.u / 3.0 + 2.0 / 3.0 * std::sqrt(g.value() * L.h), L.a};
}

// Height of W1(L) on C-.
inline double w1_c_minus_height(const State& L, Gravity g) {
  const double cL = celerity(L, g);
  if (L.u + cL < 0.0) {
    const double c = L.u + 2.0 * cL;
    if (!(c > 0.0)) throw Error(ErrorCode::NoIntersection, "1-curve never reaches C-");
    return c * c / g.value();
  }
  if (L.u + cL == 0.0) return L.h;
  const auto f = [&](double h) { return u_w1(L, h, g) + std::sqrt(g.value() * h); };
  double hi = 2.0 * L.h;
  while (f(hi) > 0.0) hi *= 2.0;
  return bisect(f, L.h, hi);
}

inline double a_max_on_w1(const State& L, double h, Gravity g) { return a_max(on_w1(L, h, g), g); }

// Lowest height >= base on W1(L), on the u >= 0 part, from which a contact up
// to a_target exists.
inline double reachable_lower_end(const State& L, double base, double a_target, Gravity g) {
  if (a_max_on_w1(L, base, g) >= a_target) return base;
  const auto hz = w1_zero_velocity_height(L, g);
  if (!hz || *hz <= base || L.a + *hz < a_target)
    throw Error(ErrorCode::NoStationaryContact, "no state of the 1-curve reaches the right bottom level");
  return bisect([&](double h) { return a_max_on_w1(L, h, g) - a_target; }, base, *hz);
}

inline double composite_upper_end(const State& L, double lo, double a_target, Gravity g) {
  const double hc = w1_c_minus_height(L, g);
  if (L.a >= a_target) return hc;
  const auto hz = w1_zero_velocity_height(L, g);
  const double start = hz ? std::max(lo, *hz) : lo;
  if (a_max_on_w1(L, start, g) < a_target)
    throw Error(ErrorCode::NoStationaryContact, "no state of the 1-curve reaches the right bottom level");
  if (start >= hc) return start;
  return bisect([&](double h) { return a_max_on_w1(L, h, g) - a_target; }, start, hc);
}

class FanBuilder {
 public:
  FanBuilder(const State& L, Gravity g) : g_(g) { states_.push_back(L); }

  const State& back() const { return states_.back(); }

  void contact(const State& r) {
    const State l = back();
    if (l == r) return;
    push({WaveKind::StationaryContact, WaveFamily::Three, 0.0, 0.0, l, r});
  }

  void one(const State& r, bool zero_speed = false) {
    const State l = back();
    if (l == r) return;
    if (zero_speed) {
      push({WaveKind::Shock, WaveFamily::One, 0.0, 0.0, l, r});
    } else if (r.h < l.h) {
      push({WaveKind::Rarefaction, WaveFamily::One, eigenvalues(l, g_).lambda1, eigenvalues(r, g_).lambda1, l, r});
    } else {
      const double s = curve_shock_speed(WaveFamily::One, l, r, g_);
      push({WaveKind::Shock, WaveFamily::One, s, s, l, r});
    }
  }

  void two(const State& r) {
    const State l = back();
    if (l == r) return;
    if (r.h > l.h) {
      push({WaveKind::Rarefaction, WaveFamily::Two, eigenvalues(l, g_).lambda2, eigenvalues(r, g_).lambda2, l, r});
    } else {
      const double s = curve_shock_speed(WaveFamily::Two, l, r, g_);
      push({WaveKind::Shock, WaveFamily::Two, s, s, l, r});
    }
  }

  // 1-rarefaction to vacuum, dry zone, 2-rarefaction out of vacuum to r.
  void dry_to(const State& r) {
    const State l = back();
    const State dry = State::dry(r.a);
    const double si = l.u + 2.0 * celerity(l, g_);
    const double sj = r.u - 2.0 * celerity(r, g_);
    push({WaveKind::Rarefaction, WaveFamily::One, eigenvalues(l, g_).lambda1, si, l, dry});
    states_.pop_back();
    push({WaveKind::DryFront, WaveFamily::Three, si, sj, dry, dry});
    push({WaveKind::Rarefaction, WaveFamily::Two, sj, eigenvalues(r, g_).lambda2, dry, r});
  }

  void name(std::string n, const State& s) { named_.push_back({std::move(n), s}); }

  // Checks speed ordering; violations within rounding are clamped, with
  // zero-speed waves kept pinned at zero.
  std::optional<RiemannSolution> finish(ConstructionTag tag) {
    double scale = 1.0;
    for (const auto& w : waves_) scale = std::max({scale, std::abs(w.speed_lo), std::abs(w.speed_hi)});
    const double tol = 1e-9 * scale;
    for (std::size_t i = 0; i + 1 < waves_.size(); ++i) {
      Wave& a = waves_[i];
      Wave& b = waves_[i + 1];
      if (b.speed_lo >= a.speed_hi) continue;
      if (a.speed_hi - b.speed_lo > tol) return std::nullopt;
      const bool b_pinned = b.speed_lo == 0.0 && b.speed_hi == 0.0;
      if (b_pinned) {
        a.speed_hi = b.speed_lo;
        if (a.kind == WaveKind::Shock) a.speed_lo = a.speed_hi;
      } else {
        b.speed_lo = a.speed_hi;
        if (b.kind == WaveKind::Shock) b.speed_hi = b.speed_lo;
      }
    }
    RiemannSolution sol;
    sol.tag = tag;
    sol.states = std::move(states_);
    sol.waves = std::move(waves_);
    sol.named = std::move(named_);
    return sol;
  }

 private:
  void push(const Wave& w) {
    waves_.push_back(w);
    states_.push_back(w.right);
  }

  Gravity g_;
  std::vector<State> states_;
  std::vector<Wave> waves_;
  std::vector<NamedState> named_;
};

inline RiemannSolution trivial_solution(ConstructionTag tag, const State& U) {
  RiemannSolution sol;
  sol.tag = tag;
  sol.states = {U};
  return sol;
}

inline void require_wet(const State& L, const State& R) {
  if (!(L.h > 0.0) || !(R.h > 0.0)) throw Error(ErrorCode::NonPositiveHeight, "Riemann data need h > 0");
}

inline bool regime_a_state(const State& L, Gravity g) {
  const PhaseRegion r = classify_region(L, g);
  return r == PhaseRegion::G1 || r == PhaseRegion::CPlus;
}

// Left states from which a 1-rarefaction reaches C+ through G2.
inline bool regime_b_state(const State& L, Gravity g) {
  if (regime_a_state(L, g)) return false;
  return L.u + 2.0 * celerity(L, g) > 0.0;
}

}  // namespace detail

/// W1(U0) ∩ W2^B(UR) as a state at level U0.a; nullopt when the curves only
/// meet through vacuum.
inline std::optional<State> intersect_w1_w2b(const State& U0, const State& UR, Gravity g) {
  detail::require_wet(U0, UR);
  const auto f = [&](double h) { return detail::u_w1(U0, h, g) - detail::u_w2b(UR, h, g); };
  if (f(U0.h) == 0.0) return U0;
  if (f(UR.h) == 0.0) return State{UR.h, detail::u_w1(U0, UR.h, g), U0.a};
  if (U0.u + 2.0 * celerity(U0, g) <= UR.u - 2.0 * celerity(UR, g)) return std::nullopt;
  const auto df = [&](double h) {
    return du_dh_on_curve(WaveFamily::One, CurveOrientation::Forward, U0, h, g) -
           du_dh_on_curve(WaveFamily::Two, CurveOrientation::Backward, UR, h, g);
  };
  double lo = std::min(U0.h, UR.h);
  double hi = std::max(U0.h, UR.h);
  for (int k = 0; f(lo) <= 0.0; ++k) {
    if (k > 2000) throw Error(ErrorCode::NoIntersection, "W1 and W2^B: no lower bracket");
    lo *= 0.5;
  }
  for (int k = 0; f(hi) >= 0.0; ++k) {
    if (k > 2000) throw Error(ErrorCode::NoIntersection, "W1 and W2^B: no upper bracket");
    hi *= 2.0;
  }
  const RootPolicy policy = RootPolicy{}.scaled(detail::speed_scale(U0, UR, g));
  const double h = newton_safeguarded(f, df, std::max(U0.h, UR.h), std::pair{lo, hi}, policy);
  return State{h, detail::u_w1(U0, h, g), U0.a};
}

/// The state of W2^B(UR) carrying the discharge of UL, at level UR.a.
inline State intersect_w3_w2b(const State& UL, const State& UR, Gravity g) {
  detail::require_wet(UL, UR);
  const double q = UL.h * UL.u;
  if (q < 0.0) throw Error(ErrorCode::NoIntersection, "discharge line with q < 0 is not handled");
  const auto f = [&](double h) { return q / h - detail::u_w2b(UR, h, g); };
  if (f(UR.h) == 0.0) return UR;
  if (q == 0.0 && UR.u - 2.0 * celerity(UR, g) >= 0.0)
    throw Error(ErrorCode::NoIntersection, "W2^B stays above u = 0");
  const auto df = [&](double h) {
    return -q / (h * h) - du_dh_on_curve(WaveFamily::Two, CurveOrientation::Backward, UR, h, g);
  };
  double lo = UR.h, hi = UR.h;
  for (int k = 0; f(lo) <= 0.0; ++k) {
    if (k > 2000) throw Error(ErrorCode::NoIntersection, "W3 and W2^B: no lower bracket");
    lo *= 0.5;
  }
  for (int k = 0; f(hi) >= 0.0; ++k) {
    if (k > 2000) throw Error(ErrorCode::NoIntersection, "W3 and W2^B: no upper bracket");
    hi *= 2.0;
  }
  const RootPolicy policy = RootPolicy{}.scaled(std::max({1.0, std::abs(UR.u), q / lo}));
  const double h = newton_safeguarded(f, df, 0.5 * (lo + hi), std::pair{lo, hi}, policy);
  return State{h, q / h, UR.a};
}

namespace detail {

inline std::optional<RiemannSolution> build_a1(const State& L, const State& R, Gravity g) {
  if (!regime_a_state(L, g)) return std::nullopt;
  const State Lo = require_contact(L, R.a, ContactSide::SupercriticalSide, g);
  const State Los = zero_speed_partner(Lo, g);
  if (!(phi2(Los, R, g) < 0.0)) return std::nullopt;

  FanBuilder fan(L, g);
  fan.name("UL^o", Lo);
  fan.name("UL^o#", Los);
  fan.contact(Lo);
  if (auto M = intersect_w1_w2b(Lo, R, g)) {
    fan.name("UM", *M);
    fan.one(*M);
    fan.two(R);
  } else {
    fan.name("I", State::dry(R.a));
    fan.name("J", State::dry(R.a));
    fan.dry_to(R);
  }
  return fan.finish(ConstructionTag::A1);
}

struct AEndpoints {
  State o_sharp;
  State sharp_o;
};

inline AEndpoints a_endpoints(const State& L, const State& R, Gravity g) {
  const State Lo = require_contact(L, R.a, ContactSide::SupercriticalSide, g);
  const State Ls = zero_speed_partner(L, g);
  return {zero_speed_partner(Lo, g), contact_or_tangent(Ls, R.a, ContactSide::SubcriticalSide, g)};
}

inline bool same_strict_sign(double a, double b) { return (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0); }

inline std::optional<RiemannSolution> build_a2(const State& L, const State& R, Gravity g) {
  if (!regime_a_state(L, g)) return std::nullopt;
  const AEndpoints e = a_endpoints(L, R, g);
  const double p_os = phi2(e.o_sharp, R, g);
  const double p_so = phi2(e.sharp_o, R, g);
  if (same_strict_sign(p_os, p_so)) return std::nullopt;

  // Level of the half-way contact, between the two limiting patterns.
  const auto pattern = [&](double a) {
    const State M = require_contact(L, a, ContactSide::SupercriticalSide, g);
    const State N = zero_speed_partner(M, g);
    return contact_or_tangent(N, R.a, ContactSide::SubcriticalSide, g);
  };
  const double a_half = bisect([&](double a) { return phi2(pattern(a), R, g); }, R.a, L.a);
  const State UM = intersect_w3_w2b(L, R, g);
  if (UM.h < h_min(L, g)) return std::nullopt;
  const State M = require_contact(L, a_half, ContactSide::SupercriticalSide, g);
  const State N = zero_speed_partner(M, g);

  FanBuilder fan(L, g);
  fan.name("UL^o#", e.o_sharp);
  fan.name("UL^#o", e.sharp_o);
  fan.name("U1", M);
  fan.name("U2", N);
  fan.name("UM", UM);
  fan.contact(M);
  fan.one(N, true);
  fan.contact(UM);
  fan.two(R);
  return fan.finish(ConstructionTag::A2);
}

// The composite curve W1^a(L) over heights [lo, hi] of W1(L).
struct CompositeRange {
  double lo;
  double hi;
};

inline State composite_image(const State& L, double h, double a_target, Gravity g) {
  return contact_or_tangent(on_w1(L, h, g), a_target, ContactSide::SubcriticalSide, g);
}

inline double level_mismatch(const State& L, const State& R, double h, Gravity g) {
  State U = on_w1(L, h, g);
  U.u = std::max(U.u, 0.0);  // the u = 0 end may come back as -0.0 or -1 ulp
  const State V = intersect_w3_w2b(U, R, g);
  const double a = L.a + (U.u * U.u - V.u * V.u) / (2.0 * g.value()) + U.h - V.h;
  return a - R.a;
}

inline double composite_root(const State& L, const State& R, const CompositeRange& range, double f_lo,
                             CompositeAlgorithm algorithm, Gravity g) {
  const auto F = [&](double h) { return phi2(composite_image(L, h, R.a, g), R, g); };
  if (L.a == R.a) {
    if (auto B = intersect_w1_w2b(L, R, g); B && B->h >= range.lo && B->h <= range.hi) return B->h;
  }
  if (algorithm == CompositeAlgorithm::LevelMismatch) {
    const auto hz = w1_zero_velocity_height(L, g);
    if (!hz || *hz <= range.lo)
      throw Error(ErrorCode::NoIntersection, "level-mismatch search needs u > 0 above the lower end");
    const double hi = std::min(range.hi, *hz);
    const auto m = [&](double h) { return level_mismatch(L, R, h, g); };
    if (same_strict_sign(m(range.lo), m(hi)))
      throw Error(ErrorCode::NoIntersection, "bottom-level mismatch keeps its sign on the u > 0 part");
    const double h = bisect(m, range.lo, hi);
    const State U = on_w1(L, h, g);
    const State V = intersect_w3_w2b(U, R, g);
    if (V.h < h_min(U, g)) throw Error(ErrorCode::NoIntersection, "level-mismatch root on the supercritical side");
    return h;
  }
  double lo = range.lo, hi = range.hi;
  if (auto B = intersect_w1_w2b(L, R, g); B && B->h > lo && B->h < hi) {
    const double fb = F(B->h);
    if (fb == 0.0) return B->h;
    if (same_strict_sign(fb, f_lo))
      lo = B->h;
    else
      hi = B->h;
  }
  return bisect(F, lo, hi);
}

inline std::optional<RiemannSolution> build_composite(ConstructionTag tag, const State& L, const State& R,
                                                      const CompositeRange& range, bool strict_lower,
                                                      const ConstructOptions& opt, Gravity g) {
  if (!(range.lo < range.hi)) return std::nullopt;
  const auto F = [&](double h) { return phi2(composite_image(L, h, R.a, g), R, g); };
  const double f_lo = F(range.lo);
  const double f_hi = F(range.hi);
  if (strict_lower ? !(f_lo > 0.0) : f_lo < 0.0) return std::nullopt;
  if (f_hi > 0.0) return std::nullopt;

  double hM = 0.0;
  if (L.h >= range.lo && L.h <= range.hi && F(L.h) == 0.0)
    hM = L.h;
  else if (f_lo == 0.0)
    hM = range.lo;
  else
    hM = composite_root(L, R, range, f_lo, opt.algorithm, g);

  const State UM = hM == L.h ? L : on_w1(L, hM, g);
  const State UMo = contact_or_tangent(UM, R.a, ContactSide::SubcriticalSide, g);

  FanBuilder fan(L, g);
  fan.name("K", on_w1(L, range.hi, g));
  fan.name("K^o", composite_image(L, range.hi, R.a, g));
  fan.name("UM", UM);
  fan.name("UM^o", UMo);
  fan.one(UM);
  fan.contact(UMo);
  fan.two(R);
  return fan.finish(tag);
}

inline std::optional<RiemannSolution> build_a3(const State& L, const State& R, const ConstructOptions& opt,
                                               Gravity g) {
  double base = 0.0;
  if (regime_a_state(L, g))
    base = zero_speed_partner(L, g).h;
  else if (is_subcritical(classify_region(L, g)))
    base = L.h;
  else
    return std::nullopt;
  const double lo = L.a >= R.a ? base : reachable_lower_end(L, base, R.a, g);
  const double hi = composite_upper_end(L, lo, R.a, g);
  return build_composite(ConstructionTag::A3, L, R, {lo, hi}, false, opt, g);
}

// U_1 of the B constructions: where W1(L) leaves the set of states that can
// be carried to level R.a by a contact.
inline State b_anchor(const State& L, const State& R, Gravity g) {
  if (L.a >= R.a) return w1_c_plus_state(L, g);
  return on_w1(L, reachable_lower_end(L, w1_c_plus_height(L, g), R.a, g), g);
}

inline std::optional<RiemannSolution> build_b3(const State& L, const State& R, const ConstructOptions& opt,
                                               Gravity g) {
  if (!regime_b_state(L, g)) return std::nullopt;
  const double lo = L.a >= R.a ? w1_c_plus_height(L, g) : b_anchor(L, R, g).h;
  const double hi = composite_upper_end(L, lo, R.a, g);
  auto sol = build_composite(ConstructionTag::B3, L, R, {lo, hi}, true, opt, g);
  if (sol) sol->named.push_back({"U1", L.a >= R.a ? w1_c_plus_state(L, g) : on_w1(L, lo, g)});
  return sol;
}

struct BStates {
  State U1;
  State U2;        // contact image of U1 on the supercritical side (or on C+)
  State U2_sharp;  // bound for the 1-wave leaving U2
};

inline BStates b_states(const State& L, const State& R, Gravity g) {
  const State U1 = b_anchor(L, R, g);
  State U2 = U1;
  if (L.a > R.a) {
    U2 = contact_or_tangent(U1, R.a, ContactSide::SupercriticalSide, g);
  } else if (L.a < R.a) {
    const double hm = h_min(U1, g);
    U2 = State{hm, U1.h * U1.u / hm, R.a};
  }
  return {U1, U2, L.a > R.a ? zero_speed_partner(U2, g) : U2};
}

inline std::optional<RiemannSolution> build_b1(const State& L, const State& R, Gravity g) {
  if (!regime_b_state(L, g)) return std::nullopt;
  const BStates s = b_states(L, R, g);
  if (phi2(s.U2_sharp, R, g) > 0.0) return std::nullopt;

  FanBuilder fan(L, g);
  fan.name("U1", s.U1);
  fan.name("U2", s.U2);
  fan.name("U2#", s.U2_sharp);
  fan.one(s.U1);
  fan.contact(s.U2);
  if (auto U3 = intersect_w1_w2b(s.U2, R, g)) {
    fan.name("U3", *U3);
    fan.one(*U3);
    fan.two(R);
  } else {
    fan.name("I", State::dry(R.a));
    fan.name("J", State::dry(R.a));
    fan.dry_to(R);
  }
  return fan.finish(ConstructionTag::B1);
}

inline std::optional<RiemannSolution> build_b2(const State& L, const State& R, Gravity g) {
  if (!regime_b_state(L, g) || !(L.a > R.a)) return std::nullopt;
  const BStates s = b_states(L, R, g);
  const State U1o = contact_or_tangent(s.U1, R.a, ContactSide::SubcriticalSide, g);
  const double p1 = phi2(U1o, R, g);
  const double p2 = phi2(s.U2_sharp, R, g);
  if (same_strict_sign(p1, p2)) return std::nullopt;

  const auto pattern = [&](double a) {
    const State M = contact_or_tangent(s.U1, a, ContactSide::SupercriticalSide, g);
    const State N = zero_speed_partner(M, g);
    return contact_or_tangent(N, R.a, ContactSide::SubcriticalSide, g);
  };
  const double a_half = bisect([&](double a) { return phi2(pattern(a), R, g); }, R.a, L.a);
  const State P = intersect_w3_w2b(s.U1, R, g);
  if (P.h < h_min(s.U1, g)) return std::nullopt;
  const State M = contact_or_tangent(s.U1, a_half, ContactSide::SupercriticalSide, g);
  const State N = zero_speed_partner(M, g);

  FanBuilder fan(L, g);
  fan.name("U1", s.U1);
  fan.name("U1^o", U1o);
  fan.name("U2#", s.U2_sharp);
  fan.name("M", M);
  fan.name("N", N);
  fan.name("P", P);
  fan.one(s.U1);
  fan.contact(M);
  fan.one(N, true);
  fan.contact(P);
  fan.two(R);
  return fan.finish(ConstructionTag::B2);
}

}  // namespace detail

/// Builds the wave pattern of the given construction, or nullopt when its
/// applicability test fails. Throws NoStationaryContact when a contact the
/// construction needs does not exist.
inline std::optional<RiemannSolution> construct(ConstructionTag tag, const State& L, const State& R, Gravity g,
                                                const ConstructOptions& opt = {}) {
  detail::require_wet(L, R);
  if (L == R) return detail::trivial_solution(tag, L);
  switch (tag) {
    case ConstructionTag::A1: return detail::build_a1(L, R, g);
    case ConstructionTag::A2: return detail::build_a2(L, R, g);
    case ConstructionTag::A3: return detail::build_a3(L, R, opt, g);
    case ConstructionTag::B1: return detail::build_b1(L, R, g);
    case ConstructionTag::B2: return detail::build_b2(L, R, g);
    case ConstructionTag::B3: return detail::build_b3(L, R, opt, g);
  }
  return std::nullopt;
}

/// construct() with the non-existence errors folded into the none-result.
inline std::optional<RiemannSolution> try_construct(ConstructionTag tag, const State& L, const State& R, Gravity g,
                                                    const ConstructOptions& opt = {}) {
  try {
    return construct(tag, L, R, g, opt);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoStationaryContact || e.code() == ErrorCode::NoIntersection) return std::nullopt;
    throw;
  }
}

/// Image of a solution under x -> -x.
inline RiemannSolution mirror(const RiemannSolution& s) {
  RiemannSolution m;
  m.tag = s.tag;
  m.mirrored = !s.mirrored;
  for (auto it = s.states.rbegin(); it != s.states.rend(); ++it) m.states.push_back(reflect(*it));
  for (auto it = s.waves.rbegin(); it != s.waves.rend(); ++it) {
    WaveFamily f = it->family;
    if (f == WaveFamily::One)
      f = WaveFamily::Two;
    else if (f == WaveFamily::Two)
      f = WaveFamily::One;
    m.waves.push_back({it->kind, f, -it->speed_hi, -it->speed_lo, reflect(it->right), reflect(it->left)});
  }
  for (const auto& n : s.named) m.named.push_back({n.name, reflect(n.state)});
  return m;
}

enum class Side { Left, Right };

/// State at similarity speed xi. Discontinuities are right-continuous; with
/// Side::Left the left limit is returned instead (e.g. 0- at a zero-speed
/// cluster).
inline State sample(const RiemannSolution& sol, double xi, Gravity g, Side side = Side::Right) {
  const auto before = [&](double s) { return side == Side::Right ? xi < s : xi <= s; };
  for (const auto& w : sol.waves) {
    if (before(w.speed_lo)) return w.left;
    if (w.kind == WaveKind::Rarefaction || w.kind == WaveKind::DryFront) {
      if (!before(w.speed_hi)) continue;
      if (xi == w.speed_lo) return w.left;
      if (xi == w.speed_hi) return w.right;
      if (w.kind == WaveKind::DryFront) return State::dry(w.left.a);
      const bool one = w.family == WaveFamily::One;
      const State& anchor = one ? w.left : w.right;
      return rarefaction_fan_state(w.family, anchor, xi, g);
    }
  }
  return sol.states.back();
}

inline constexpr std::array<ConstructionTag, 6> kDefaultPreference{ConstructionTag::A1, ConstructionTag::B3,
                                                                   ConstructionTag::A2, ConstructionTag::B2,
                                                                   ConstructionTag::A3, ConstructionTag::B1};

struct SolveOptions {
  std::vector<ConstructionTag> preference{kDefaultPreference.begin(), kDefaultPreference.end()};
  // Route lambda1(U_L) <= 0 to the A solvers, the literal form of the
  // selection rule; for comparison only.
  bool literal_branch_sign = false;
  ConstructOptions construct{};
};

namespace detail {

inline bool takes_a_branch(const State& L, const SolveOptions& opt, Gravity g) {
  if (opt.literal_branch_sign) return eigenvalues(L, g).lambda1 <= 0.0;
  return regime_a_state(L, g);
}

inline std::optional<RiemannSolution> solve_direct(const State& L, const State& R, const SolveOptions& opt,
                                                   Gravity g) {
  const bool a_branch = takes_a_branch(L, opt, g);
  for (ConstructionTag t : opt.preference) {
    if (is_regime_a(t) != a_branch) continue;
    if (auto s = try_construct(t, L, R, g, opt.construct)) return s;
  }
  return std::nullopt;
}

// Over a flat bottom the classical solution is the only one; the tag records
// which construction it coincides with.
inline ConstructionTag flat_tag(const State& L, const std::optional<State>& M, Gravity g) {
  if (regime_a_state(L, g)) return M && M->h >= zero_speed_partner(L, g).h ? ConstructionTag::A3 : ConstructionTag::A1;
  return M && M->h >= w1_c_plus_height(L, g) ? ConstructionTag::B3 : ConstructionTag::B1;
}

inline RiemannSolution flat_solution(const State& L, const State& R, Gravity g) {
  const auto M = intersect_w1_w2b(L, R, g);
  FanBuilder fan(L, g);
  if (M) {
    fan.name("UM", *M);
    fan.one(*M);
    fan.two(R);
  } else {
    fan.dry_to(R);
  }
  const bool mirrored = !regime_a_state(L, g) && !regime_b_state(L, g);
  const ConstructionTag tag =
      mirrored ? flat_tag(reflect(R), M ? std::optional<State>(reflect(*M)) : std::nullopt, g) : flat_tag(L, M, g);
  auto sol = fan.finish(tag);
  if (!sol) throw Error(ErrorCode::NoSolution, "flat-bottom wave speeds out of order");
  sol->mirrored = mirrored;
  return *sol;
}

}  // namespace detail

/// The solution picked by the preference list; the reflected problem is used
/// for left states beyond C- and as a fallback.
inline RiemannSolution solve(const State& L, const State& R, Gravity g, const SolveOptions& opt = {}) {
  detail::require_wet(L, R);
  if (L == R) {
    const bool a = detail::takes_a_branch(L, opt, g);
    return detail::trivial_solution(a ? ConstructionTag::A1 : ConstructionTag::B3, L);
  }
  if (L.a == R.a) return detail::flat_solution(L, R, g);
  const bool mirrored_first = eigenvalues(L, g).lambda2 <= 0.0;
  const auto direct = [&] { return detail::solve_direct(L, R, opt, g); };
  const auto reflected = [&]() -> std::optional<RiemannSolution> {
    if (auto s = detail::solve_direct(reflect(R), reflect(L), opt, g)) return mirror(*s);
    return std::nullopt;
  };
  if (auto s = mirrored_first ? reflected() : direct()) return *s;
  if (auto s = mirrored_first ? direct() : reflected()) return *s;
  throw Error(ErrorCode::NoSolution, "no construction applies");
}

inline ConstructionTag select_solver(const State& L, const State& R, Gravity g, const SolveOptions& opt = {}) {
  return solve(L, R, g, opt).tag;
}

enum class Uniqueness { Unique, MultipleTwo, MultipleThree, None };

constexpr std::string_view to_string(Uniqueness u) {
  switch (u) {
    case Uniqueness::Unique: return "Unique";
    case Uniqueness::MultipleTwo: return "MultipleTwo";
    case Uniqueness::MultipleThree: return "MultipleThree";
    case Uniqueness::None: return "None";
  }
  return "?";
}

enum class Regime { A, B, Other };

/// Sign tests behind a verdict. Regime A fills the UL^{o#} / UL^{#o} pair,
/// regime B the U1^o / U2^# pair; K^o is the far end of the composite curve.
struct ClassificationEvidence {
  Regime regime = Regime::Other;
  std::optional<State> ul_o_sharp, ul_sharp_o;
  std::optional<double> phi2_ul_o_sharp, phi2_ul_sharp_o;
  std::optional<State> u1_o, u2_sharp;
  std::optional<double> phi2_u1_o, phi2_u2_sharp;
  std::optional<State> k_o;
  std::optional<double> phi2_k_o;
};

struct ClassificationReport {
  bool exists = false;
  bool mirrored = false;
  std::vector<std::pair<ConstructionTag, RiemannSolution>> solutions;
  Uniqueness uniqueness = Uniqueness::None;
  ClassificationEvidence evidence;
};

namespace detail {

template <class F>
auto guarded(F&& f) -> std::optional<decltype(f())> {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoStationaryContact || e.code() == ErrorCode::NoIntersection) return std::nullopt;
    throw;
  }
}

inline ClassificationEvidence gather_evidence(const State& L, const State& R, Gravity g) {
  ClassificationEvidence ev;
  if (regime_a_state(L, g)) {
    ev.regime = Regime::A;
    if (auto e = guarded([&] { return a_endpoints(L, R, g); })) {
      ev.ul_o_sharp = e->o_sharp;
      ev.ul_sharp_o = e->sharp_o;
      ev.phi2_ul_o_sharp = phi2(e->o_sharp, R, g);
      ev.phi2_ul_sharp_o = phi2(e->sharp_o, R, g);
    }
    const auto ko = guarded([&] {
      const double base = zero_speed_partner(L, g).h;
      const double lo = L.a >= R.a ? base : reachable_lower_end(L, base, R.a, g);
      return composite_image(L, composite_upper_end(L, lo, R.a, g), R.a, g);
    });
    if (ko) {
      ev.k_o = *ko;
      ev.phi2_k_o = phi2(*ko, R, g);
    }
  } else if (regime_b_state(L, g)) {
    ev.regime = Regime::B;
    if (auto s = guarded([&] { return b_states(L, R, g); })) {
      const State U1o = L.a == R.a ? s->U1 : L.a > R.a ? contact_or_tangent(s->U1, R.a, ContactSide::SubcriticalSide, g)
                                                       : s->U2;
      ev.u1_o = U1o;
      ev.u2_sharp = s->U2_sharp;
      ev.phi2_u1_o = phi2(U1o, R, g);
      ev.phi2_u2_sharp = phi2(s->U2_sharp, R, g);
      const auto ko = guarded([&] {
        return composite_image(L, composite_upper_end(L, s->U1.h, R.a, g), R.a, g);
      });
      if (ko) {
        ev.k_o = *ko;
        ev.phi2_k_o = phi2(*ko, R, g);
      }
    }
  }
  return ev;
}

}  // namespace detail

/// The pair of contact endpoints that drives the verdict for a left state
/// and a target level: (UL^{#o}, UL^{o#}) in regime A, (U1^o, U2^#) in B.
struct LevelPair {
  Regime regime = Regime::Other;
  State first;
  State second;
};

inline LevelPair level_pair(const State& L, double a_target, Gravity g) {
  if (!(L.h > 0.0)) throw Error(ErrorCode::NonPositiveHeight, "left state must be wet");
  const ClassificationEvidence ev = detail::gather_evidence(L, State{L.h, L.u, a_target}, g);
  if (ev.regime == Regime::A && ev.ul_o_sharp) return {Regime::A, *ev.ul_sharp_o, *ev.ul_o_sharp};
  if (ev.regime == Regime::B && ev.u1_o) return {Regime::B, *ev.u1_o, *ev.u2_sharp};
  throw Error(ErrorCode::NoStationaryContact, "no contact endpoints for this level");
}

namespace detail {

inline bool theorem_multiple(const ClassificationEvidence& ev, const State& L, const State& R) {
  if (ev.regime == Regime::A && ev.ul_o_sharp && ev.ul_sharp_o)
    return ev.ul_sharp_o->h < ev.ul_o_sharp->h && *ev.phi2_ul_sharp_o > 0.0 && *ev.phi2_ul_o_sharp < 0.0;
  if (ev.regime == Regime::B && ev.u1_o && ev.u2_sharp)
    return L.a > R.a && ev.u1_o->h < ev.u2_sharp->h && *ev.phi2_u1_o > 0.0 && *ev.phi2_u2_sharp < 0.0;
  return false;
}

}  // namespace detail

/// Existence/multiplicity verdict: the sign tests of the classification
/// theorems plus every construction that succeeds.
inline ClassificationReport classify(const State& L, const State& R, Gravity g, const ConstructOptions& opt = {}) {
  detail::require_wet(L, R);
  ClassificationReport rep;
  if (L == R) {
    rep.exists = true;
    rep.uniqueness = Uniqueness::Unique;
    rep.evidence.regime = detail::regime_a_state(L, g) ? Regime::A : Regime::B;
    const ConstructionTag t = rep.evidence.regime == Regime::A ? ConstructionTag::A1 : ConstructionTag::B3;
    rep.solutions.emplace_back(t, detail::trivial_solution(t, L));
    return rep;
  }

  const auto run = [&](const State& l, const State& r) {
    ClassificationReport out;
    out.evidence = detail::gather_evidence(l, r, g);
    for (ConstructionTag t : kAllTags) {
      if (out.evidence.regime == Regime::Other) break;
      if (is_regime_a(t) != (out.evidence.regime == Regime::A)) continue;
      if (auto s = try_construct(t, l, r, g, opt)) out.solutions.emplace_back(t, std::move(*s));
    }
    const std::size_t n = out.solutions.size();
    out.exists = n > 0;
    if (detail::theorem_multiple(out.evidence, l, r))
      out.uniqueness = Uniqueness::MultipleThree;
    else
      out.uniqueness = n == 0 ? Uniqueness::None : n == 1 ? Uniqueness::Unique : Uniqueness::MultipleTwo;
    return out;
  };

  const bool mirrored_first = eigenvalues(L, g).lambda2 <= 0.0;
  rep = mirrored_first ? run(reflect(R), reflect(L)) : run(L, R);
  rep.mirrored = mirrored_first;
  if (!rep.exists) {
    ClassificationReport alt = mirrored_first ? run(L, R) : run(reflect(R), reflect(L));
    if (alt.exists) {
      rep = std::move(alt);
      rep.mirrored = !mirrored_first;
    }
  }
  if (rep.mirrored)
    for (auto& [t, s] : rep.solutions) s = mirror(s);
  return rep;
}

inline std::ostream& operator<<(std::ostream& os, const Wave& w) {
  os << to_string(w.kind);
  if (w.family != WaveFamily::Three) os << (w.family == WaveFamily::One ? "-1" : "-2");
  os << " [" << w.speed_lo;
  if (w.speed_hi != w.speed_lo) os << ", " << w.speed_hi;
  return os << "] " << w.left << " -> " << w.right;
}

}  // namespace swe
