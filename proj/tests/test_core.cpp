#include <gtest/gtest.h>

#include <cmath>

#include "swe/core.hpp"

using namespace swe;

namespace {
const Gravity g{};
}

TEST(Gravity, DefaultAndValidation) {
  EXPECT_DOUBLE_EQ(g.value(), 9.8);
  EXPECT_THROW(Gravity(0.0), Error);
  EXPECT_THROW(Gravity(-1.0), Error);
  EXPECT_THROW(Gravity(std::nan("")), Error);
}

TEST(Eigenvalues, StateOnResonanceCurve) {
  const auto ev = eigenvalues({1.0, 3.1304952, 1.0}, g);
  EXPECT_NEAR(ev.lambda1, 0.0, 1e-7);
  EXPECT_EQ(ev.lambda3, 0.0);
}

TEST(Eigenvalues, DryStateCollapses) {
  const auto ev = eigenvalues({0.0, 5.0, 0.0}, g);
  EXPECT_EQ(ev.lambda1, 5.0);
  EXPECT_EQ(ev.lambda2, 5.0);
}

TEST(Eigenvalues, StillWater) {
  const auto ev = eigenvalues({1.0, 0.0, 0.0}, g);
  EXPECT_NEAR(ev.lambda1, -std::sqrt(9.8), 1e-15);
  EXPECT_NEAR(ev.lambda2, std::sqrt(9.8), 1e-15);
  EXPECT_NEAR(ev.lambda2, 3.1305, 1e-4);
}

TEST(Regions, Classification) {
  EXPECT_EQ(classify_region({0.5, 4.0, 1.0}, g), PhaseRegion::G1);
  EXPECT_EQ(classify_region({3.0, 0.5, 1.0}, g), PhaseRegion::G2Plus);
  EXPECT_EQ(classify_region({3.0, -0.5, 1.0}, g), PhaseRegion::G2Minus);
  EXPECT_EQ(classify_region({0.5, -4.0, 1.0}, g), PhaseRegion::G3);
  EXPECT_EQ(classify_region({1.0, -std::sqrt(9.8), 0.0}, g), PhaseRegion::CMinus);
  EXPECT_EQ(classify_region({1.0, std::sqrt(9.8), 0.0}, g), PhaseRegion::CPlus);
}

TEST(Regions, ToleranceBand) {
  const double c = std::sqrt(9.8);
  EXPECT_EQ(classify_region({1.0, c * (1 + 1e-12), 0.0}, g), PhaseRegion::CPlus);
  EXPECT_EQ(classify_region({1.0, c * (1 + 1e-6), 0.0}, g), PhaseRegion::G1);
  EXPECT_EQ(classify_region({1.0, c * (1 + 1e-6), 0.0}, g, 1e-3), PhaseRegion::CPlus);
}

TEST(Regions, MirrorMatchesReflect) {
  for (const State s : {State{0.5, 4, 0}, State{3, 0.5, 0}, State{3, -0.5, 0}, State{0.5, -4, 0}}) {
    EXPECT_EQ(classify_region(reflect(s), g), mirror(classify_region(s, g)));
  }
  EXPECT_TRUE(is_subcritical(PhaseRegion::G2Minus));
  EXPECT_FALSE(is_subcritical(PhaseRegion::CPlus));
}

TEST(Flux, Values) {
  const Flux f0 = flux({1.0, 0.0, 0.0}, g);
  EXPECT_DOUBLE_EQ(f0.mass, 0.0);
  EXPECT_DOUBLE_EQ(f0.momentum, 4.9);
  const Flux fd = flux({0.0, 3.0, 0.0}, g);
  EXPECT_EQ(fd.mass, 0.0);
  EXPECT_EQ(fd.momentum, 0.0);
  const Flux f1 = flux({1.0, 5.0, 0.0}, g);
  EXPECT_DOUBLE_EQ(f1.mass, 5.0);
  EXPECT_DOUBLE_EQ(f1.momentum, 29.9);
}

TEST(State, Basics) {
  const State s{2.0, 3.0, 1.0};
  EXPECT_DOUBLE_EQ(s.discharge(), 6.0);
  EXPECT_EQ(reflect(reflect(s)), s);
  EXPECT_TRUE(State::dry(1.0).is_dry());
  EXPECT_NEAR(froude({1.0, std::sqrt(9.8), 0.0}, g), 1.0, 1e-15);
}
