#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "invislat/darboux.hpp"
#include "invislat/error.hpp"
#include "invislat/families.hpp"

namespace invislat {
namespace {

CVector eigenvalues(const Lattice& lat) {
  const std::size_t n = lat.num_sites();
  const CVector h = hamiltonian_matrix(lat);
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = h[i * n + j];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  return CVector(solver.eigenvalues().begin(), solver.eigenvalues().end());
}

double distance_to(const CVector& ev, Complex target) {
  double best = 1e300;
  for (const Complex& e : ev) best = std::min(best, std::abs(e - target));
  return best;
}

// F(w (n - alpha)) for the hyperbolic seeds, evaluated directly.
double hyper(SeedKind kind, double w, double alpha, long n) {
  return kind == SeedKind::Cosh ? std::cosh(w * (n - alpha)) : std::sinh(w * (n - alpha));
}

TEST(DarbouxStep, SingleStepOnFreeChainHasClosedForm) {
  // For phi on the free chain: kappa2_n^2 = phi_{n-2} phi_n / phi_{n-1}^2 and
  // V2_n = phi_{n+1}/phi_n - phi_n/phi_{n-1}.
  const Lattice free = Lattice::homogeneous(-20, 41);
  for (SeedKind kind : {SeedKind::Cosh, SeedKind::Sinh}) {
    const double w = 0.8;
    const double alpha = 0.5;
    const Lattice p = darboux_step(free, build_seed(LevelSpec::from_omega(w, 1, kind, alpha), free));
    for (long n = -18; n <= 18; ++n) {
      const double k2 = hyper(kind, w, alpha, n - 2) * hyper(kind, w, alpha, n) /
                        std::pow(hyper(kind, w, alpha, n - 1), 2);
      EXPECT_NEAR(std::abs(p.hop(n) * p.hop(n) - k2), 0.0, 1e-12) << n;
      const double v = hyper(kind, w, alpha, n + 1) / hyper(kind, w, alpha, n) -
                       hyper(kind, w, alpha, n) / hyper(kind, w, alpha, n - 1);
      EXPECT_NEAR(std::abs(p.site(n) - v), 0.0, 1e-12) << n;
    }
  }
}

TEST(DarbouxStep, IntertwiningOnRandomInteriorVectors) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  CVector hops(32, 1.0);
  for (auto& h : hops) h += 0.1 * g(rng);
  const Lattice base(-15, hops, CVector(31, 0.0));
  const LevelSpec level = LevelSpec::from_energy(2.7, SeedKind::Explicit, 0.0);
  const Complex phi1 = (level.mu * 1.3 - base.hop(0) * 1.0) / base.hop(1);
  const SeedSolution seed = explicit_seed(level, base, -1, CVector{1.0, 1.3, phi1});
  const FactorizationOps ops = factorize(base, seed);
  const Lattice partner = darboux_step(base, seed, ops);
  for (int trial = 0; trial < 10; ++trial) {
    CVector psi(31, 0.0);
    for (std::size_t i = 2; i + 2 < psi.size(); ++i) psi[i] = {g(rng), g(rng)};
    const CVector h1 = apply_hamiltonian(base, psi);
    const CVector r = ops.apply_R(psi, base.offset());
    const CVector qr = ops.apply_Q(r, base.offset());
    const CVector h2r = apply_hamiltonian(partner, r);
    const CVector rh1 = ops.apply_R(h1, base.offset());
    for (std::size_t i = 0; i < psi.size(); ++i) {
      EXPECT_NEAR(std::abs(qr[i] + level.mu * psi[i] - h1[i]), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(h2r[i] - rh1[i]), 0.0, 1e-12);
    }
  }
}

TEST(DarbouxStep, QBarUsesTheShiftedCoefficient) {
  const Lattice free = Lattice::homogeneous(-5, 11);
  const FactorizationOps ops = factorize(free, build_seed(LevelSpec::from_omega(0.5, 1, SeedKind::Cosh, 0.0), free));
  for (long n = ops.first(); n < ops.last(); ++n) {
    EXPECT_EQ(ops.q(n), -ops.r(n));
    EXPECT_EQ(ops.q_bar(n), -ops.r_bar(n + 1));
    EXPECT_NEAR(std::abs(ops.r(n) * ops.r_bar(n) + free.hop(n)), 0.0, 1e-14);
  }
}

TEST(PartnerBoundState, IsANormalizedEigenvectorAtMu) {
  const Lattice free = Lattice::homogeneous(-60, 121);
  for (int delta : {1, -1}) {
    const LevelSpec level = LevelSpec::from_omega(0.7, delta, SeedKind::Cosh, 0.0);
    const SeedSolution seed = build_seed(level, free);
    const Lattice partner = darboux_step(free, seed);
    const BoundState bs = partner_bound_state(free, seed);
    ASSERT_EQ(bs.psi.size(), partner.num_sites());
    double norm = 0.0;
    for (const Complex& x : bs.psi) norm += std::norm(x);
    EXPECT_NEAR(norm, 1.0, 1e-12);
    const CVector h = apply_hamiltonian(partner, bs.psi);
    for (std::size_t i = 0; i < h.size(); ++i) EXPECT_NEAR(std::abs(h[i] - level.mu * bs.psi[i]), 0.0, 1e-10);
    EXPECT_LT(bs.residual, 1e-10);
    // Zero mode of Q: psi_n proportional to 1 / sqrt(phi_n phi_{n-1}).
    EXPECT_NEAR(std::abs(bs.psi[70] / bs.psi[71]), std::sqrt(std::cosh(0.7 * 11) / std::cosh(0.7 * 9)), 1e-12);
  }
}

TEST(PartnerBoundState, RejectsStatesThatDoNotDecay) {
  const Lattice free = Lattice::homogeneous(-5, 11);
  const SeedSolution seed = build_seed(LevelSpec::from_omega(0.01, 1, SeedKind::Cosh, 0.0), free);
  EXPECT_THROW(partner_bound_state(free, seed), ValidationError);
}

TEST(DarbouxStep, AddsTheFactorizationLevel) {
  const Lattice free = Lattice::homogeneous(-40, 81);
  const LevelSpec level = LevelSpec::from_omega(0.9, -1, SeedKind::Cosh, 0.0);
  const Lattice partner = darboux_step(free, build_seed(level, free));
  EXPECT_LT(distance_to(eigenvalues(partner), level.mu), 1e-10);
}

TEST(DarbouxStep, VanishingSeedIsSingular) {
  const Lattice free = Lattice::homogeneous(-5, 11);
  LevelSpec level = LevelSpec::from_omega(0.5, 1, SeedKind::Sinh, 0.0);
  const SeedSolution seed = hyperbolic_sequence(level, SeedKind::Sinh, -9, 9);
  EXPECT_THROW(factorize(free, seed), SingularSeedError);
}

TEST(Transport, CarriesSolutionsToThePartner) {
  const Lattice free = Lattice::homogeneous(-30, 61);
  const SeedSolution first = build_seed(LevelSpec::from_omega(0.6, 1, SeedKind::Cosh, 0.0), free);
  const FactorizationOps ops = factorize(free, first);
  const Lattice partner = darboux_step(free, first, ops);
  const SeedSolution other = build_seed(LevelSpec::from_omega(1.2, 1, SeedKind::Sinh, 0.0 + 0.5), free);
  const SeedSolution moved = ops.transport(other);
  EXPECT_EQ(moved.level().kind, SeedKind::Explicit);
  EXPECT_EQ(moved.first(), std::max(other.first(), ops.first()));
  EXPECT_LT(seed_residual(partner, moved), 1e-11);
}

TEST(LevelPair, AddsPlusAndMinusMuWithoutPotential) {
  const Lattice free = Lattice::homogeneous(-40, 81);
  const LevelSpec level = LevelSpec::from_omega(0.6, 1, SeedKind::Cosh, 0.0);
  const LevelPair pair = add_level_pair(free, build_seed(level, free));
  const CVector ev = eigenvalues(pair.lattice);
  EXPECT_LT(distance_to(ev, level.mu), 1e-10);
  EXPECT_LT(distance_to(ev, -level.mu), 1e-10);
  for (const Complex& v : pair.lattice.sites()) EXPECT_NEAR(std::abs(v), 0.0, 1e-12);
  for (const Complex& h : pair.lattice.hops()) EXPECT_GT(h.real(), 0.0);
  const Lattice closed = synthesize_family({FamilyKind::Cosh, 1, 0.6, 0.0, 1.0}, -40, 81);
  for (long n = -40; n <= 41; ++n) EXPECT_NEAR(std::abs(pair.lattice.hop(n) - closed.hop(n)), 0.0, 1e-12);
}

}  // namespace
}  // namespace invislat
