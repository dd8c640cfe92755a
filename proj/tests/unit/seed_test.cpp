#include <gtest/gtest.h>

#include <cmath>

#include "invislat/error.hpp"
#include "invislat/seed.hpp"

namespace invislat {
namespace {

TEST(LevelSpec, EnergyAndOmegaAreInverse) {
  const LevelSpec a = LevelSpec::from_omega(0.6, -1, SeedKind::Cosh, 0.0, 1.5);
  EXPECT_NEAR(a.mu, -2.0 * 1.5 * std::cosh(0.6), 1e-15);
  const LevelSpec b = LevelSpec::from_energy(a.mu, SeedKind::Cosh, 0.0, 1.5);
  EXPECT_NEAR(b.omega, 0.6, 1e-14);
  EXPECT_EQ(b.delta, -1);
  EXPECT_NO_THROW(validate_level(b, 1.5));
  EXPECT_THROW(LevelSpec::from_energy(1.9, SeedKind::Cosh, 0.0), ParameterError);
  EXPECT_THROW(LevelSpec::from_omega(0.0, 1, SeedKind::Cosh, 0.0), ParameterError);

  LevelSpec bad = a;
  bad.mu = 3.0;
  EXPECT_THROW(validate_level(bad, 1.5), ParameterError);
}

TEST(HyperbolicSequence, MatchesDirectEvaluation) {
  const LevelSpec level = LevelSpec::from_omega(0.4, -1, SeedKind::Sinh, 0.3);
  const SeedSolution s = hyperbolic_sequence(level, SeedKind::Sinh, -10, 10);
  for (long n = -10; n <= 10; ++n) {
    const double expect = std::sinh(0.4 * (n - 0.3)) * (n % 2 == 0 ? 1.0 : -1.0);
    EXPECT_NEAR(std::abs(s.value(n) - expect), 0.0, 1e-13 * std::max(1.0, std::abs(expect)));
  }
}

TEST(HyperbolicSequence, LargeArgumentsStayInLogSpace) {
  const LevelSpec level = LevelSpec::from_omega(30.0, 1, SeedKind::Cosh, 0.0);
  const SeedSolution s = hyperbolic_sequence(level, SeedKind::Cosh, -40, 40);
  EXPECT_NEAR(s.log_scale(40) + std::log(std::abs(s.mantissa(40))), 1200.0 - std::log(2.0), 1e-9);
  EXPECT_NEAR(std::abs(s.ratio(40, 39) - std::exp(30.0)) / std::exp(30.0), 0.0, 1e-12);
}

TEST(BuildSeed, SolvesTheFreeChain) {
  const Lattice free = Lattice::homogeneous(-50, 101);
  for (SeedKind kind : {SeedKind::Cosh, SeedKind::Sinh}) {
    for (double w : {0.01, 0.6, 5.0}) {
      const SeedSolution s = build_seed(LevelSpec::from_omega(w, 1, kind, 0.5), free);
      EXPECT_TRUE(s.covers(free.offset() - kSeedPadding, free.last_site() + kSeedPadding));
      EXPECT_LT(seed_residual(free, s), 1e-12);
    }
  }
}

TEST(BuildSeed, RejectsSinhOnANode) {
  const Lattice free = Lattice::homogeneous(-5, 11);
  try {
    build_seed(LevelSpec::from_omega(0.5, 1, SeedKind::Sinh, 1.0), free);
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha must be non-integer"), std::string::npos);
  }
}

TEST(BuildSeed, RejectsSeedForAnotherLattice) {
  CVector hops(12, 1.0);
  hops[5] = 2.0;
  const Lattice lat(-5, hops, CVector(11, 0.0));
  EXPECT_THROW(build_seed(LevelSpec::from_omega(0.5, 1, SeedKind::Cosh, 0.0), lat), ValidationError);
}

TEST(ExplicitSeed, ExtendsAndValidates) {
  const Lattice free = Lattice::homogeneous(-10, 21);
  const LevelSpec level = LevelSpec::from_omega(0.7, 1, SeedKind::Explicit, 0.0);
  CVector values;
  for (long n = -2; n <= 2; ++n) values.push_back(std::exp(0.7 * n) + 0.5 * std::exp(-0.7 * n));
  const SeedSolution s = explicit_seed(level, free, -2, values);
  EXPECT_TRUE(s.covers(-14, 14));
  for (long n = -14; n <= 14; ++n) {
    const double expect = std::exp(0.7 * n) + 0.5 * std::exp(-0.7 * n);
    EXPECT_NEAR(std::abs(s.value(n) - expect) / expect, 0.0, 1e-12);
  }
  values[2] *= 1.01;
  EXPECT_THROW(explicit_seed(level, free, -2, values), ValidationError);
}

TEST(ExtendSeed, RecurrenceReproducesClosedForm) {
  const Lattice free = Lattice::homogeneous(-30, 61);
  const LevelSpec level = LevelSpec::from_omega(1.1, -1, SeedKind::Cosh, 0.25);
  const SeedSolution core = hyperbolic_sequence(level, SeedKind::Cosh, -1, 1);
  const SeedSolution ext = extend_seed(free, core, -30, 30);
  const SeedSolution ref = hyperbolic_sequence(level, SeedKind::Cosh, -30, 30);
  for (long n = -29; n <= 30; ++n) {
    EXPECT_NEAR(std::abs(ext.ratio(n, n - 1) - ref.ratio(n, n - 1)), 0.0, 1e-10 * std::abs(ref.ratio(n, n - 1)));
  }
}

TEST(SeedSolution, RatioDetectsZeroDenominator) {
  const LevelSpec level = LevelSpec::from_omega(0.5, 1, SeedKind::Sinh, 0.0);
  const SeedSolution s = hyperbolic_sequence(level, SeedKind::Sinh, -3, 3);
  EXPECT_TRUE(s.is_zero(0));
  EXPECT_THROW(s.ratio(1, 0), SingularSeedError);
  EXPECT_THROW(s.mantissa(10), DimensionError);
}

}  // namespace
}  // namespace invislat
