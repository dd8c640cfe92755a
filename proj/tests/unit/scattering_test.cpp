#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "invislat/error.hpp"
#include "invislat/extended.hpp"
#include "invislat/families.hpp"
#include "invislat/scattering.hpp"

namespace invislat {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(QGrid, IncludesEndpoints) {
  const std::vector<double> q = default_q_grid(5, 0.1);
  ASSERT_EQ(q.size(), 5u);
  EXPECT_DOUBLE_EQ(q.front(), 0.1);
  EXPECT_NEAR(q.back(), kPi - 0.1, 1e-15);
  EXPECT_THROW(default_q_grid(1), ParameterError);
}

TEST(Unwrap, RemovesJumps) {
  const std::vector<double> raw{3.0, -3.1, -2.9, 3.0};
  const std::vector<double> u = unwrap_phase(raw);
  EXPECT_NEAR(u[1], -3.1 + 2 * kPi, 1e-15);
  EXPECT_NEAR(u[3], 3.0, 1e-15);
}

TEST(ScatterNumeric, FreeChainIsTransparent) {
  const std::vector<double> q = default_q_grid(64);
  const ScatteringResult res = scatter_numeric(Lattice::homogeneous(-10, 21), q);
  for (std::size_t i = 0; i < q.size(); ++i) {
    // Decomposition divides by 2 sin q, so the rounding floor grows toward the band edges.
    EXPECT_NEAR(std::abs(res.r[i]), 0.0, 1e-14 / std::sin(q[i]));
    EXPECT_NEAR(std::abs(res.t[i] - 1.0), 0.0, 1e-14 / std::sin(q[i]));
  }
}

TEST(ScatterNumeric, SingleImpurityMatchesTextbookResult) {
  // |t|^2 = 4 sin^2 q / (4 sin^2 q + V^2) for one site potential V.
  const double v = 0.8;
  CVector sites(21, 0.0);
  sites[10] = v;
  const Lattice lat(-10, CVector(22, 1.0), sites);
  const std::vector<double> q = default_q_grid(33);
  const ScatteringResult res = scatter_numeric(lat, q);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double s2 = 4.0 * std::sin(q[i]) * std::sin(q[i]);
    EXPECT_NEAR(std::norm(res.t[i]), s2 / (s2 + v * v), 1e-12);
    EXPECT_NEAR(std::norm(res.r[i]), v * v / (s2 + v * v), 1e-12);
  }
}

TEST(ScatterNumeric, RequiresHomogeneousEdges) {
  CVector hops(22, 1.0);
  hops[0] = 1.5;
  EXPECT_THROW(scatter_numeric(Lattice(-10, hops, CVector(21, 0.0)), default_q_grid(8)), PreconditionError);
}

TEST(LevelFactor, UnitModulusAndContinuousPhase) {
  for (int delta : {1, -1}) {
    const LevelSpec level = LevelSpec::from_omega(0.7, delta, SeedKind::Cosh, 0.0);
    for (double q : default_q_grid(40)) {
      const Complex t = level_transmission(level, q);
      EXPECT_NEAR(std::abs(t), 1.0, 1e-14);
      const double diff = std::remainder(level_phase(level, q) - std::arg(t), 2 * kPi);
      EXPECT_NEAR(diff, 0.0, 1e-12);
    }
  }
}

TEST(LevelFactor, SlopeMatchesFiniteDifference) {
  for (double w : {0.01, 0.3, 2.0}) {
    for (int delta : {1, -1}) {
      const LevelSpec level = LevelSpec::from_omega(w, delta, SeedKind::Cosh, 0.0);
      for (double q : {0.3, 1.0, kPi / 2, 2.5}) {
        const double h = 1e-5;
        const double fd = (level_phase(level, q + h) - level_phase(level, q - h)) / (2 * h);
        EXPECT_NEAR(level_phase_slope(level, q), fd, 1e-6 * std::max(1.0, std::abs(fd)));
        EXPECT_GT(level_phase_slope(level, q), 0.0);
      }
      EXPECT_NEAR(level_phase_slope(level, kPi / 2), std::tanh(w), 1e-14);
    }
  }
}

TEST(GroupDelay, SumsHyperbolicTangents) {
  const FamilySpec spec{FamilyKind::Cosh, 3, 0.6, 0.0, 1.0};
  const std::vector<LevelSpec> levels = family_levels(spec);
  const GroupDelay gd = group_delay(levels, kPi / 2);
  const double expect = std::tanh(0.6) + std::tanh(1.2) + std::tanh(1.8);
  EXPECT_NEAR(gd.tau, expect, 1e-13);
  EXPECT_NEAR(gd.phase_slope, 2 * expect, 1e-13);
  EXPECT_DOUBLE_EQ(gd.group_velocity, 2.0);
  EXPECT_THROW(group_delay(levels, 0.0), ParameterError);
}

TEST(GroupDelay, ShrinksWithOmegaInTheCentralBand) {
  std::vector<double> central;
  for (double q = kPi / 4; q <= 3 * kPi / 4; q += kPi / 200) central.push_back(q);
  double previous = 1e300;
  for (double w : {2.0, 1.0, 0.5, 0.1, 0.01}) {
    const std::vector<LevelSpec> levels = family_levels({FamilyKind::Sinh, 3, w, 0.5, 1.0});
    const double flat = phase_flatness(levels, central);
    EXPECT_LT(flat, previous);
    previous = flat;
  }
}

TEST(ScatterAnalytic, MatchesDoublePrecisionTransferMatrix) {
  const FamilySpec spec{FamilyKind::Cosh, 3, 0.6, 0.0, 1.0};
  const std::vector<double> q = default_q_grid(128);
  const ScatteringResult num = scatter_numeric(synthesize_family_centered(spec, 200), q);
  const std::vector<LevelSpec> levels = family_levels(spec);
  const ScatteringResult an = scatter_analytic(levels, q);
  for (std::size_t i = 0; i < q.size(); ++i) {
    EXPECT_NEAR(std::abs(num.t[i] - an.t[i]), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(num.r[i]), 0.0, 1e-9);
  }
}

TEST(ScatterAnalytic, CarriesTheBaseCoefficients) {
  const std::vector<double> q{0.5, 1.5};
  const ScatteringResult res = scatter_analytic({}, q, Complex(0.6, 0.0), Complex(0.0, 0.8));
  EXPECT_NEAR(std::abs(res.t[0] - 0.6), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(res.r[1] - Complex(0.0, 0.8)), 0.0, 1e-15);
}

TEST(ScatterExtended, AgreesWithDoublePathWhereBothApply) {
  const FamilySpec spec{FamilyKind::Cosh, 2, 0.8, 0.0, 1.0};
  const std::vector<double> q = default_q_grid(64);
  const ScatteringResult a = scatter_family_numeric(spec, q);
  const ScatteringResult b = scatter_numeric(synthesize_family_centered(spec, 200), q);
  for (std::size_t i = 0; i < q.size(); ++i) EXPECT_NEAR(std::abs(a.t[i] - b.t[i]), 0.0, 1e-10);
}

TEST(ScatterExtended, SmallOmegaSinhFamilyIsUnitaryAndReflectionless) {
  const FamilySpec spec{FamilyKind::Sinh, 3, 0.01, 0.5, 1.0};
  const ScatteringResult res = scatter_family_numeric(spec, default_q_grid(64));
  for (std::size_t i = 0; i < res.q.size(); ++i) {
    EXPECT_LT(std::abs(res.r[i]), 1e-10);
    EXPECT_NEAR(std::norm(res.t[i]) + std::norm(res.r[i]), 1.0, 1e-10);
  }
  EXPECT_THROW(scatter_family_numeric(spec, std::vector<double>{0.0}), ParameterError);
}

}  // namespace
}  // namespace invislat
