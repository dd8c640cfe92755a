#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <random>

#include "invislat/error.hpp"
#include "invislat/lattice.hpp"

namespace invislat {
namespace {

Lattice random_lattice(std::mt19937_64& rng, long offset, std::size_t sites) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVector hops(sites + 1);
  CVector pot(sites);
  for (auto& h : hops) h = {u(rng), u(rng)};
  for (auto& v : pot) v = {u(rng), u(rng)};
  return Lattice(offset, hops, pot);
}

std::vector<Complex> sorted_eigenvalues(const Lattice& lat) {
  const std::size_t n = lat.num_sites();
  const CVector h = hamiltonian_matrix(lat);
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = h[i * n + j];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<Complex> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

TEST(Lattice, HomogeneousWindowAndExterior) {
  const Lattice lat = Lattice::homogeneous(-3, 7, 1.5);
  EXPECT_EQ(lat.offset(), -3);
  EXPECT_EQ(lat.last_site(), 3);
  EXPECT_EQ(lat.hops().size(), 8u);
  EXPECT_EQ(lat.hop(-3), Complex(1.5));
  EXPECT_EQ(lat.hop(100), Complex(1.5));
  EXPECT_EQ(lat.site(-50), Complex(0.0));
  EXPECT_TRUE(lat.is_hermitian());
  EXPECT_TRUE(defect_window(lat, 1e-12).empty());
}

TEST(Lattice, RejectsInconsistentStorage) {
  EXPECT_THROW(Lattice(0, CVector(3, 1.0), CVector(3, 0.0)), DimensionError);
  EXPECT_THROW(Lattice(0, CVector{1.0, 0.0, 1.0}, CVector(2, 0.0)), ValidationError);
  EXPECT_THROW(Lattice(0, CVector{1.0, std::nan(""), 1.0}, CVector(2, 0.0)), ValidationError);
  EXPECT_THROW(Lattice(0, CVector(3, 1.0), CVector(2, 0.0), -1.0), ParameterError);
}

TEST(Lattice, HamiltonianActionMatchesExplicitStencil) {
  std::mt19937_64 rng(7);
  const Lattice lat = random_lattice(rng, -4, 9);
  CVector psi(9);
  std::normal_distribution<double> g;
  for (auto& x : psi) x = {g(rng), g(rng)};
  const CVector h = apply_hamiltonian(lat, psi);
  for (long n = lat.offset(); n <= lat.last_site(); ++n) {
    const std::size_t i = static_cast<std::size_t>(n - lat.offset());
    Complex expect = lat.site(n) * psi[i];
    if (n > lat.offset()) expect += lat.hop(n) * psi[i - 1];
    if (n < lat.last_site()) expect += lat.hop(n + 1) * psi[i + 1];
    EXPECT_NEAR(std::abs(h[i] - expect), 0.0, 1e-14);
  }
  const CVector dense = hamiltonian_matrix(lat);
  for (std::size_t i = 0; i < 9; ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < 9; ++j) row += dense[i * 9 + j] * psi[j];
    EXPECT_NEAR(std::abs(row - h[i]), 0.0, 1e-13);
  }
}

TEST(Lattice, CropFillsWithAsymptoticValues) {
  CVector hops{1.0, 2.0, 3.0, 1.0};
  const Lattice lat(0, hops, CVector{0.5, 0.0, 0.0}, 1.0);
  const Lattice c = lat.crop(-2, 1);
  EXPECT_EQ(c.offset(), -2);
  EXPECT_EQ(c.hop(-2), Complex(1.0));
  EXPECT_EQ(c.hop(1), Complex(2.0));
  EXPECT_EQ(c.site(0), Complex(0.5));
  EXPECT_THROW(lat.crop(3, 1), DimensionError);
}

TEST(Lattice, DefectWindowAndEdges) {
  const Lattice base = Lattice::homogeneous(-20, 41);
  CVector hops(base.hops().begin(), base.hops().end());
  hops[22] = 1.3;  // bond 2
  const Lattice lat(-20, hops, CVector(41, 0.0));
  const IndexRange w = defect_window(lat, 1e-6);
  EXPECT_TRUE(w.contains(2));
  EXPECT_LE(w.size(), 2u);
  EXPECT_NEAR(edge_deviation(lat), 0.0, 0.0);

  hops[0] = 1.1;
  const Lattice dirty(-20, hops, CVector(41, 0.0));
  EXPECT_THROW(defect_window(dirty, 1e-6), PreconditionError);
  EXPECT_NEAR(edge_deviation(dirty), 0.1, 1e-12);
}

TEST(BranchSqrt, FixedBranch) {
  EXPECT_EQ(branch_sqrt(4.0), Complex(2.0));
  EXPECT_NEAR(std::abs(branch_sqrt(-4.0) - Complex(0.0, 2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(branch_sqrt(Complex(-4.0, -1e-14)) - Complex(0.0, 2.0)), 0.0, 1e-14);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const Complex z(u(rng), u(rng));
    const Complex s = branch_sqrt(z);
    EXPECT_GE(s.real(), 0.0);
    EXPECT_NEAR(std::abs(s * s - z), 0.0, 1e-13);
  }
}

TEST(CanonicalGauge, MakesHopsCanonicalAndKeepsSpectrum) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Lattice lat = random_lattice(rng, -3, 12);
    const Lattice g = canonical_gauge(lat);
    for (const Complex& h : g.hops()) {
      EXPECT_TRUE(h.real() > 0.0 || (h.real() == 0.0 && h.imag() > 0.0));
    }
    const auto a = sorted_eigenvalues(lat);
    const auto b = sorted_eigenvalues(g);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-10);
    const std::vector<int> s = canonical_gauge_signs(lat);
    EXPECT_EQ(s.size(), lat.num_sites() + 2);
    EXPECT_EQ(s.front(), 1);
  }
}

}  // namespace
}  // namespace invislat
