#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "swe/riemann.hpp"

using namespace swe;
using T = ConstructionTag;

namespace {
const Gravity g{};

void expect_state(const State& s, double h, double u, double tol, const char* what) {
  EXPECT_NEAR(s.h, h, tol) << what;
  EXPECT_NEAR(s.u, u, tol) << what;
}

State named(const RiemannSolution& s, std::string_view n) {
  const auto p = s.find(n);
  EXPECT_TRUE(p) << n;
  return p.value_or(State{});
}

// Independent check of a wave fan: consecutive states, jump conditions,
// invariants across contacts and speed ordering.
void expect_consistent(const RiemannSolution& s, double tol = 1e-9) {
  ASSERT_EQ(s.states.size(), s.waves.size() + 1);
  for (std::size_t i = 0; i < s.waves.size(); ++i) {
    const Wave& w = s.waves[i];
    EXPECT_EQ(w.left, s.states[i]);
    EXPECT_EQ(w.right, s.states[i + 1]);
    if (i > 0) {
      EXPECT_LE(s.waves[i - 1].speed_hi, w.speed_lo + 1e-12);
    }
    EXPECT_LE(w.speed_lo, w.speed_hi);
    if (w.kind == WaveKind::Shock) {
      const JumpResidual r = rankine_hugoniot_residual(w.left, w.right, w.speed_lo, g);
      EXPECT_NEAR(r.mass, 0.0, tol);
      EXPECT_NEAR(r.momentum, 0.0, tol);
    } else if (w.kind == WaveKind::StationaryContact) {
      EXPECT_NEAR(w.left.h * w.left.u, w.right.h * w.right.u, tol);
      const double el = 0.5 * w.left.u * w.left.u + 9.8 * (w.left.h + w.left.a);
      const double er = 0.5 * w.right.u * w.right.u + 9.8 * (w.right.h + w.right.a);
      EXPECT_NEAR(el, er, tol);
    }
  }
}
}  // namespace

TEST(Tags, ParseAndPrint) {
  EXPECT_EQ(parse_tag("a3"), T::A3);
  EXPECT_EQ(parse_tag("B1"), T::B1);
  EXPECT_FALSE(parse_tag("c1"));
  EXPECT_EQ(to_string(T::B2), "B2");
  EXPECT_TRUE(is_regime_a(T::A2));
  EXPECT_FALSE(is_regime_a(T::B3));
}

TEST(Intersections, DischargeLineMeetsBackwardTwoCurve) {
  const State UL{0.2, 5.0, 1.0};
  const State UR{0.75904946, 1.0 / 0.75904946, 1.2};
  const State M = intersect_w3_w2b(UL, UR, g);
  EXPECT_NEAR(M.h, 0.75904946, 1e-9);
  EXPECT_NEAR(M.u, 1.0 / 0.75904946, 1e-9);
  EXPECT_EQ(M.a, 1.2);
}

TEST(Intersections, Trivial) {
  const State U{1.0, 1.0, 0.0};
  EXPECT_EQ(intersect_w3_w2b(U, U, g), U);
  EXPECT_EQ(*intersect_w1_w2b(U, U, g), U);
}

TEST(Intersections, VacuumGivesNone) {
  EXPECT_FALSE(intersect_w1_w2b({1.0, -10.0, 0.0}, {1.0, 10.0, 0.0}, g));
}

TEST(Construct, Test2FollowsCurveFormulas) {
  const State L{0.3, 2.0, 1.1}, R{0.4, 2.2, 1.0};
  const auto s = construct(T::A1, L, R, g);
  ASSERT_TRUE(s);
  expect_consistent(*s);
  const State Lo = named(*s, "UL^o");
  const State M = named(*s, "UM");
  expect_state(Lo, 0.21815897, 2.750288, 1e-6, "UL^o");
  expect_state(M, 0.350913202522, 1.9490829265, 1e-9, "UM");
  // UM sits on W1(UL^o) (shock branch, h > h0) and W2^B(UR) (rarefaction branch, h < hR).
  EXPECT_NEAR(curve_residual(WaveFamily::One, CurveOrientation::Forward, M, Lo, g), 0.0, 1e-10);
  EXPECT_NEAR(phi2(M, R, g), 0.0, 1e-10);
}

TEST(Construct, Test3CompositeCurve) {
  const State L{1.0, 3.0, 1.2}, R{2.0, 0.5, 1.0};
  for (T t : {T::A3, T::B3}) {
    const auto s = construct(t, L, R, g);
    ASSERT_TRUE(s) << to_string(t);
    expect_consistent(*s);
    expect_state(named(*s, "UM"), 1.8452179, 0.67672469, 1e-7, "UM");
    expect_state(named(*s, "UM^o"), 2.0496463, 0.60922927, 1e-7, "UM^o");
  }
}

TEST(Construct, CompositeAlgorithmsAgree) {
  const State L{1.0, 3.0, 1.2}, R{2.0, 0.5, 1.0};
  const auto a = construct(T::A3, L, R, g, {CompositeAlgorithm::PhiBisection});
  const auto b = construct(T::A3, L, R, g, {CompositeAlgorithm::LevelMismatch});
  ASSERT_TRUE(a && b);
  EXPECT_NEAR(named(*a, "UM").h, named(*b, "UM").h, 1e-9);
  EXPECT_NEAR(named(*a, "UM").u, named(*b, "UM").u, 1e-9);
}

TEST(Construct, Test4) {
  const auto s = construct(T::B3, {1.0, 3.0, 1.1}, {1.2, 0.1, 1.0}, g);
  ASSERT_TRUE(s);
  expect_consistent(*s);
  expect_state(named(*s, "UM"), 1.5521168, 1.4328264, 1e-7, "UM");
  expect_state(named(*s, "UM^o"), 1.665941, 1.3349296, 1e-6, "UM^o");
}

TEST(Construct, Test5) {
  const auto s = construct(T::A1, {0.2, 4.0, 1.0}, {0.5, 1.5, 1.1}, g);
  ASSERT_TRUE(s);
  expect_consistent(*s);
  expect_state(named(*s, "UL^o"), 0.21591647, 3.7051366, 1e-7, "UL^o");
  expect_state(named(*s, "UM"), 0.56185289, 1.7661913, 1e-7, "UM");
}

TEST(Construct, Test6ThreeSolutions) {
  const State L{0.2, 5.0, 1.0};
  const State R{0.75904946, 1.3410741, 1.2};
  const auto a1 = construct(T::A1, L, R, g);
  ASSERT_TRUE(a1);
  expect_consistent(*a1);
  expect_state(named(*a1, "UL^o"), 0.21984063, 4.5487497, 1e-7, "UL^o");
  expect_state(named(*a1, "UM"), 0.7964266, 1.4737915, 1e-7, "UM");

  // The A2 and A3 intermediate states of Test 6 belong to u_R = 1/h_R.
  const State Rs{0.75904946, 1.3174372, 1.2};
  const auto a2 = construct(T::A2, L, Rs, g);
  ASSERT_TRUE(a2);
  expect_consistent(*a2);
  expect_state(named(*a2, "UM"), 0.75904946, 1.3174372, 1e-6, "UM");
  const auto a3 = construct(T::A3, L, Rs, g);
  ASSERT_TRUE(a3);
  expect_consistent(*a3);
  expect_state(named(*a3, "UM"), 0.95328169, 0.89892673, 1e-7, "UM");
  expect_state(named(*a3, "UM^o"), 0.72279573, 1.1855776, 1e-7, "UM^o");

  for (T t : {T::A2, T::A3}) EXPECT_TRUE(construct(t, L, R, g)) << to_string(t);
  for (T t : {T::B1, T::B2, T::B3}) EXPECT_FALSE(construct(t, L, R, g)) << to_string(t);
}

TEST(Construct, Test6ThreeFormShockMovesLeft) {
  const auto a3 = construct(T::A3, {0.2, 5.0, 1.0}, {0.75904946, 1.3410741, 1.2}, g);
  ASSERT_TRUE(a3);
  ASSERT_FALSE(a3->waves.empty());
  EXPECT_EQ(a3->waves.front().kind, WaveKind::Shock);
  EXPECT_LT(a3->waves.front().speed_hi, 0.0);
}

TEST(Construct, Test7ResonantRarefaction) {
  const auto s = construct(T::B1, {1.0, 2.0, 1.1}, {0.8, 4.0, 1.0}, g);
  ASSERT_TRUE(s);
  expect_consistent(*s);
  expect_state(named(*s, "U1"), 0.77374106, 2.7536634, 1e-7, "U1");
  expect_state(named(*s, "U2"), 0.58589019, 3.636556, 1e-6, "U2");
  expect_state(named(*s, "U3"), 0.64142927, 3.4143821, 1e-7, "U3");
  EXPECT_NEAR(named(*s, "U2#").h, 0.998204556070240, 1e-12);
  // The 1-rarefaction ends on the resonance curve.
  EXPECT_NEAR(eigenvalues(named(*s, "U1"), g).lambda1, 0.0, 1e-9);
}

TEST(Construct, SameStateHasNoWaves) {
  const State U{1.0, 0.5, 0.3};
  for (T t : kAllTags) {
    const auto s = construct(t, U, U, g);
    ASSERT_TRUE(s);
    EXPECT_TRUE(s->waves.empty());
    EXPECT_EQ(s->left(), U);
  }
}

TEST(Construct, WetDataRequired) {
  EXPECT_THROW(construct(T::A1, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, g), Error);
}

TEST(Solve, DefaultSelection) {
  EXPECT_EQ(select_solver({0.3, 2.0, 1.1}, {0.4, 2.2, 1.0}, g), T::A1);
  EXPECT_EQ(select_solver({1.0, 2.0, 1.1}, {0.8, 4.0, 1.0}, g), T::B1);
  SolveOptions a3first;
  a3first.preference = {T::A3, T::A1, T::A2, T::B3, T::B2, T::B1};
  EXPECT_EQ(select_solver({0.2, 5.0, 1.0}, {0.75904946, 1.3410741, 1.2}, g, a3first), T::A3);
  SolveOptions a2first;
  a2first.preference = {T::A2, T::A1};
  EXPECT_EQ(select_solver({0.2, 5.0, 1.0}, {0.75904946, 1.3410741, 1.2}, g, a2first), T::A2);
}

TEST(Solve, FlatBottomDamBreak) {
  const auto s = solve({2.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, g);
  expect_consistent(s);
  ASSERT_EQ(s.waves.size(), 2u);
  EXPECT_EQ(s.waves[0].kind, WaveKind::Rarefaction);
  EXPECT_EQ(s.waves[1].kind, WaveKind::Shock);
  const State M = s.states[1];
  // Classical star state of the 2:1 dam break.
  EXPECT_NEAR(M.h, 1.4538409, 1e-6);
  EXPECT_NEAR(M.u, 1.3051680, 1e-6);
}

TEST(Solve, FlatBottomVacuum) {
  const auto s = solve({1.0, -7.0, 0.0}, {1.0, 7.0, 0.0}, g);  // 14 > 4 sqrt(g)
  const State mid = sample(s, 0.0, g);
  EXPECT_TRUE(mid.is_dry());
}

TEST(Solve, LeftStateBeyondCMinusUsesReflection) {
  const State L{0.5, -4.0, 1.0}, R{0.4, -3.0, 1.1};
  const auto s = solve(L, R, g);
  EXPECT_TRUE(s.mirrored);
  EXPECT_EQ(s.left(), L);
  EXPECT_EQ(s.right(), R);
  expect_consistent(s);
}

TEST(Mirror, SymmetricProblemsAgree) {
  const State L{0.3, 2.0, 1.1}, R{0.4, 2.2, 1.0};
  const auto s = solve(L, R, g);
  const auto m = solve(reflect(R), reflect(L), g);
  for (double xi : {-3.0, -0.5, 0.3, 0.7, 2.0, 4.0}) {
    const State a = sample(s, xi, g);
    const State b = reflect(sample(m, -xi, g));
    EXPECT_NEAR(a.h, b.h, 1e-9) << xi;
    EXPECT_NEAR(a.u, b.u, 1e-9) << xi;
  }
}

TEST(Sample, Test1IsStationary) {
  const State L{1.0, 5.0, 1.0}, R{1.223655890827479, 4.086116070277590, 1.2};
  const auto s = solve(L, R, g);
  for (double xi : {-10.0, -1.0, -1e-9}) EXPECT_EQ(sample(s, xi, g), L);
  for (double xi : {1e-9, 1.0, 10.0}) {
    const State r = sample(s, xi, g);
    EXPECT_NEAR(r.h, R.h, 1e-12);
    EXPECT_NEAR(r.u, R.u, 1e-12);
  }
}

TEST(Sample, Test2TracesAtZero) {
  const auto s = solve({0.3, 2.0, 1.1}, {0.4, 2.2, 1.0}, g);
  expect_state(sample(s, 0.0, g, Side::Left), 0.3, 2.0, 0.0, "0-");
  expect_state(sample(s, 0.0, g, Side::Right), 0.21815897, 2.750288, 1e-6, "0+");
  EXPECT_EQ(sample(s, 0.0, g, Side::Right).a, 1.0);
}

TEST(Sample, FarFieldAndFanInterior) {
  const State L{2.0, 0.0, 0.0}, R{1.0, 0.0, 0.0};
  const auto s = solve(L, R, g);
  EXPECT_EQ(sample(s, -100.0, g), L);
  EXPECT_EQ(sample(s, 100.0, g), R);
  const double xi = 0.5 * (s.waves[0].speed_lo + s.waves[0].speed_hi);
  EXPECT_NEAR(eigenvalues(sample(s, xi, g), g).lambda1, xi, 1e-12);
}

TEST(Classify, Verdicts) {
  EXPECT_EQ(classify({1.0, 3.0, 1.1}, {1.2, 0.1, 1.0}, g).uniqueness, Uniqueness::Unique);
  EXPECT_EQ(classify({1.0, 2.0, 1.1}, {0.8, 4.0, 1.0}, g).uniqueness, Uniqueness::Unique);
  const auto six = classify({0.2, 5.0, 1.0}, {0.75904946, 1.3410741, 1.2}, g);
  EXPECT_EQ(six.uniqueness, Uniqueness::MultipleThree);
  EXPECT_EQ(six.solutions.size(), 3u);
}

TEST(Classify, Test4Evidence) {
  const auto r = classify({1.0, 3.0, 1.1}, {1.2, 0.1, 1.0}, g);
  EXPECT_EQ(r.evidence.regime, Regime::B);
  EXPECT_TRUE(r.exists);
}

TEST(Classify, Test7Evidence) {
  const auto r = classify({1.0, 2.0, 1.1}, {0.8, 4.0, 1.0}, g);
  ASSERT_TRUE(r.evidence.u1_o && r.evidence.u2_sharp);
  EXPECT_NEAR(r.evidence.u1_o->h, 1.050890579855180, 1e-9);
  EXPECT_NEAR(r.evidence.u2_sharp->h, 0.998204556070240, 1e-9);
}

TEST(Classify, TrivialProblem) {
  const auto r = classify({1.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, g);
  EXPECT_TRUE(r.exists);
  EXPECT_EQ(r.uniqueness, Uniqueness::Unique);
  ASSERT_EQ(r.solutions.size(), 1u);
  EXPECT_TRUE(r.solutions[0].second.waves.empty());
}

TEST(LevelPair, TablesA1AndB3) {
  const auto a = level_pair({0.5, 4.0, 1.0}, 0.9, g);
  EXPECT_EQ(a.regime, Regime::A);
  expect_state(a.first, 1.1930011, 1.6764444, 1e-6, "UL^#o");
  expect_state(a.second, 1.1171275, 1.790306, 1e-6, "UL^o#");
  const auto b = level_pair({3.0, 1.0, 2.0}, 1.0, g);
  EXPECT_EQ(b.regime, Regime::B);
  EXPECT_NEAR(b.first.h, 3.187878980786353, 1e-9);
  EXPECT_NEAR(b.second.h, 2.574902018055705, 1e-9);
}

TEST(Output, WaveText) {
  const auto s = solve({2.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, g);
  std::ostringstream os;
  os << s.waves[1];
  EXPECT_NE(os.str().find("shock-2"), std::string::npos);
}
