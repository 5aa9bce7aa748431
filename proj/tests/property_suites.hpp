#pragma once

// Randomised invariants shared by the property test binary and the
// acceptance report. Each suite draws `draws` inputs from a fixed-seed
// generator and stops at the first violation, reporting the offending input.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "swe/riemann.hpp"
#include "swe/stationary_contact.hpp"

namespace swe::props {

inline constexpr int kDraws = 10000;

struct SuiteResult {
  std::string name;
  int draws = 0;
  int checked = 0;  // inputs (or waves) the invariant actually applied to
  int required = 0;  // minimum coverage for the run to count
  double worst = 0.0;
  std::string failure;

  bool ok() const { return failure.empty() && checked >= required; }
  std::string summary() const {
    std::ostringstream os;
    os << name << ": " << draws << " draws, " << checked << " checked";
    if (worst > 0.0) os << ", worst " << worst;
    if (!failure.empty()) os << "; FAILED: " << failure;
    else if (checked < required) os << "; too few applicable inputs (< " << required << ")";
    return os.str();
  }
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

  // Height and Froude number drawn separately so every region is hit.
  State state(double fr_lo, double fr_hi, double a_lo = 0.5, double a_hi = 1.5) {
    const double h = std::exp(uniform(std::log(0.05), std::log(4.0)));
    const double fr = uniform(fr_lo, fr_hi);
    return State{h, fr * std::sqrt(9.8 * h), uniform(a_lo, a_hi)};
  }

  State any_state() { return state(-4.0, 4.0); }

  // Left supercritical, right subcritical, mostly a step up: the regime
  // with up to three solutions.
  std::pair<State, State> resonant_pair() {
    const State L = state(1.02, 5.0, 0.8, 1.2);
    State R = state(0.05, 0.95, 0.8, 1.4);
    if (coin(0.7)) R.a = L.a + uniform(0.0, 0.3);
    return {L, R};
  }

  std::pair<State, State> riemann_pair() {
    switch (static_cast<int>(uniform(0.0, 4.0))) {
      case 0: return resonant_pair();
      case 1: return {state(0.05, 0.98), state(0.05, 0.98)};
      case 2: return {state(0.1, 0.95), state(1.05, 3.0)};
      default: return {any_state(), any_state()};
    }
  }

 private:
  std::mt19937_64 rng_;
};

inline std::string show(const State& s) {
  std::ostringstream os;
  os.precision(17);
  os << s;
  return os.str();
}

inline std::string show(const State& L, const State& R) { return "L=" + show(L) + " R=" + show(R); }

inline double bernoulli(const State& s, Gravity g) { return 0.5 * s.u * s.u + g.value() * (s.h + s.a); }

// Zeros of the contact cubic by a uniform scan of [0, H] plus plain
// bisection on each sign change; shares nothing with the library's solvers.
inline std::vector<double> scan_roots(const State& U0, double a, double H, int cells, Gravity g) {
  const double q = U0.h * U0.u;
  const auto f = [&](double h) {
    return 2.0 * g.value() * h * h * h + (2.0 * g.value() * (a - U0.a - U0.h) - U0.u * U0.u) * h * h + q * q;
  };
  std::vector<double> roots;
  double x0 = 1e-12 * H, f0 = f(x0);
  for (int i = 1; i <= cells; ++i) {
    const double x1 = H * i / cells, f1 = f(x1);
    if ((f0 > 0) != (f1 > 0)) {
      double lo = x0, hi = x1, flo = f0;
      for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
        const double m = 0.5 * (lo + hi), fm = f(m);
        if ((fm > 0) == (flo > 0)) {
          lo = m;
          flo = fm;
        } else {
          hi = m;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

inline SuiteResult shocks_satisfy_jump_conditions(int draws = kDraws) {
  const Gravity g;
  SuiteResult r{"Rankine-Hugoniot residual of emitted shocks <= 1e-9", draws, 0, draws / 2, 0.0, {}};
  Gen gen(0x5eed0001);
  for (int i = 0; i < draws; ++i) {
    const auto [L, R] = gen.riemann_pair();
    std::vector<RiemannSolution> sols;
    for (ConstructionTag t : kAllTags)
      if (auto s = try_construct(t, L, R, g)) sols.push_back(std::move(*s));
    try {
      sols.push_back(solve(L, R, g));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSolution) {
        r.failure = std::string(e.what()) + " " + show(L, R);
        return r;
      }
    }
    for (const auto& s : sols)
      for (const auto& w : s.waves) {
        if (w.kind != WaveKind::Shock) continue;
        ++r.checked;
        const JumpResidual j = rankine_hugoniot_residual(w.left, w.right, w.speed_lo, g);
        const double m = std::max(std::abs(j.mass), std::abs(j.momentum));
        r.worst = std::max(r.worst, m);
        if (m > 1e-9) {
          r.failure = "residual " + std::to_string(m) + " " + show(L, R);
          return r;
        }
      }
  }
  return r;
}

inline SuiteResult contacts_preserve_invariants(int draws = kDraws) {
  const Gravity g;
  SuiteResult r{"discharge and head jump of stationary contacts <= 1e-9", draws, 0, draws, 0.0, {}};
  Gen gen(0x5eed0002);
  const auto check = [&](const State& a, const State& b, const std::string& ctx) {
    ++r.checked;
    const double dq = std::abs(a.h * a.u - b.h * b.u);
    const double de = std::abs(bernoulli(a, g) - bernoulli(b, g));
    r.worst = std::max({r.worst, dq, de});
    if (dq > 1e-9 || de > 1e-9) {
      std::ostringstream os;
      os << "dq=" << dq << " de=" << de << " " << ctx;
      r.failure = os.str();
    }
    return r.failure.empty();
  };
  for (int i = 0; i < draws; ++i) {
    const auto [L, R] = gen.riemann_pair();
    for (ConstructionTag t : kAllTags) {
      const auto s = try_construct(t, L, R, g);
      if (!s) continue;
      for (const auto& w : s->waves)
        if (w.kind == WaveKind::StationaryContact &&
            !check(w.left, w.right, std::string(to_string(t)) + " " + show(L, R)))
          return r;
    }
    const State U0 = gen.any_state();
    const double a = U0.a + gen.uniform(-0.5, 0.5);
    for (auto side : {ContactSide::SupercriticalSide, ContactSide::SubcriticalSide}) {
      const auto U = admissible_contact(U0, a, side, g);
      if (U && !check(*U, U0, show(U0) + " a=" + std::to_string(a))) return r;
    }
  }
  return r;
}

inline SuiteResult contact_root_ordering(int draws = kDraws) {
  const Gravity g;
  SuiteResult r{"h1 <= h_min <= h_* <= h2 whenever roots exist", draws, 0, draws / 2, 0.0, {}};
  Gen gen(0x5eed0003);
  for (int i = 0; i < draws; ++i) {
    const State U0 = gen.any_state();
    if (U0.u == 0.0) continue;
    const double am = a_max(U0, g);
    const double a = gen.coin(0.1) ? am : U0.a + gen.uniform(-1.0, 1.05) * (am - U0.a + 0.2);
    const auto roots = contact_roots(U0, a, g);
    if (!roots) {
      if (!(a > am)) {
        r.failure = "no roots below a_max: " + show(U0);
        return r;
      }
      continue;
    }
    ++r.checked;
    const double tol = 1e-9 * std::max(1.0, roots->h2);
    if (roots->h1 > roots->h_min + tol || roots->h_min > roots->h_star + tol || roots->h_star > roots->h2 + tol) {
      r.failure = "ordering violated at " + show(U0) + " a=" + std::to_string(a);
      return r;
    }
  }
  return r;
}

inline SuiteResult a_max_bound(int draws = kDraws) {
  const Gravity g;
  SuiteResult r{"a_max(U0) >= a0", draws, 0, draws, 0.0, {}};
  Gen gen(0x5eed0004);
  for (int i = 0; i < draws; ++i) {
    State U0 = gen.coin(0.05) ? State{gen.uniform(0.01, 3.0), 0.0, gen.uniform(-1, 1)} : gen.any_state();
    if (gen.coin(0.05)) U0.u = std::sqrt(g.value() * U0.h) * (gen.coin() ? 1.0 : -1.0);
    ++r.checked;
    const double am = a_max(U0, g);
    // On C+- the bound is attained; allow the rounding of the cube roots there.
    if (am < U0.a - 1e-12 * std::max(1.0, std::abs(U0.a))) {
      r.failure = "a_max below a0 at " + show(U0);
      return r;
    }
  }
  return r;
}

inline SuiteResult contact_roots_match_scan(int draws = kDraws) {
  const Gravity g;
  SuiteResult r{"contact_roots vs sign-scan oracle within 1e-6", draws, 0, draws * 9 / 10, 0.0, {}};
  Gen gen(0x5eed0005);
  for (int i = 0; i < draws; ++i) {
    const State U0 = gen.any_state();
    if (U0.u == 0.0) continue;
    const double am = a_max(U0, g);
    // Stay clear of the tangency, where a finite scan cannot separate the roots.
    const double a = U0.a + gen.uniform(-1.0, 0.97) * (am - U0.a);
    const auto roots = contact_roots(U0, a, g);
    if (!roots) {
      r.failure = "no roots below a_max: " + show(U0);
      return r;
    }
    const double H = 2.0 * std::max(roots->h2, U0.h + U0.a - a + U0.u * U0.u / g.value()) + 1.0;
    const auto scan = scan_roots(U0, a, H, 4000, g);
    if (scan.size() != 2) continue;
    ++r.checked;
    const double d = std::max(std::abs(roots->h1 - scan[0]), std::abs(roots->h2 - scan[1]));
    r.worst = std::max(r.worst, d);
    if (d > 1e-6) {
      r.failure = "gap " + std::to_string(d) + " at " + show(U0) + " a=" + std::to_string(a);
      return r;
    }
  }
  return r;
}

inline SuiteResult composite_algorithms_agree(int draws = kDraws) {
  const Gravity g;
  SuiteResult r{"bisection on Phi2 vs level-mismatch search agree within 1e-9", draws, 0, 1000, 0.0, {}};
  Gen gen(0x5eed0006);
  for (int i = 0; i < draws; ++i) {
    std::pair<State, State> d =
        gen.coin() ? gen.resonant_pair() : std::pair{gen.state(0.1, 0.98, 1.0, 1.4), gen.state(0.05, 0.9, 0.6, 1.0)};
    const auto [L, R] = d;
    for (ConstructionTag t : {ConstructionTag::A3, ConstructionTag::B3}) {
      const auto a = try_construct(t, L, R, g, {CompositeAlgorithm::PhiBisection});
      const auto b = try_construct(t, L, R, g, {CompositeAlgorithm::LevelMismatch});
      // The level-mismatch bracket ends where W1(U_L) crosses u = 0, so a
      // U_M with u < 0 is outside that algorithm's domain.
      if (a && !b && a->find("UM")->u < 0.0) continue;
      if (a.has_value() != b.has_value()) {
        r.failure = std::string(to_string(t)) + " constructs with one algorithm only: " + show(L, R);
        return r;
      }
      if (!a) continue;
      ++r.checked;
      const State ma = *a->find("UM"), mb = *b->find("UM");
      const double gap = std::max(std::abs(ma.h - mb.h), std::abs(ma.u - mb.u));
      r.worst = std::max(r.worst, gap);
      if (gap > 1e-9) {
        r.failure = std::string(to_string(t)) + " gap " + std::to_string(gap) + " " + show(L, R);
        return r;
      }
    }
  }
  return r;
}

inline SuiteResult multiple_three_has_three(int draws = kDraws) {
  const Gravity g;
  SuiteResult r{"MultipleThree verdict comes with exactly three solutions", draws, 0, 500, 0.0, {}};
  Gen gen(0x5eed0007);
  const State L6{0.2, 5.0, 1.0}, R6{0.75904946, 1.3410741, 1.2};
  for (int i = 0; i < draws; ++i) {
    std::pair<State, State> d = gen.resonant_pair();
    if (gen.coin()) {
      d.first = {L6.h * gen.uniform(0.8, 1.2), L6.u * gen.uniform(0.8, 1.2), L6.a};
      d.second = {R6.h * gen.uniform(0.8, 1.2), R6.u * gen.uniform(0.8, 1.2), R6.a + gen.uniform(-0.1, 0.1)};
    }
    const auto [L, R] = d;
    const auto rep = classify(L, R, g);
    if (rep.uniqueness != Uniqueness::MultipleThree) continue;
    ++r.checked;
    if (rep.solutions.size() != 3) {
      r.failure = std::to_string(rep.solutions.size()) + " solutions for " + show(L, R);
      return r;
    }
  }
  return r;
}

inline SuiteResult solve_returns_ordered_fans(int draws = kDraws) {
  const Gravity g;
  SuiteResult r{"solve() returns ordered fans joining L to R", draws, 0, draws * 9 / 10, 0.0, {}};
  Gen gen(0x5eed0008);
  for (int i = 0; i < draws; ++i) {
    const auto [L, R] = gen.riemann_pair();
    RiemannSolution s;
    try {
      s = solve(L, R, g);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSolution) {
        r.failure = std::string(e.what()) + " " + show(L, R);
        return r;
      }
      continue;
    }
    ++r.checked;
    bool ok = s.left() == L && std::abs(s.right().h - R.h) <= 1e-12 && std::abs(s.right().u - R.u) <= 1e-12;
    for (std::size_t k = 1; k < s.waves.size(); ++k) ok = ok && s.waves[k - 1].speed_hi <= s.waves[k].speed_lo;
    for (const auto& w : s.waves)
      if (w.kind == WaveKind::StationaryContact) ok = ok && w.speed_lo == 0.0 && w.speed_hi == 0.0;
    if (!ok) {
      r.failure = "malformed fan for " + show(L, R);
      return r;
    }
  }
  return r;
}

}  // namespace swe::props
