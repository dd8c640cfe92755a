#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "invislat/eigen.hpp"
#include "invislat/error.hpp"
#include "invislat/spectrum.hpp"

namespace invislat {
namespace {

void sort_complex(std::vector<Complex>& v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
}

// Matching by nearest neighbour avoids spurious failures when two eigenvalues share a real part.
double spectral_distance(std::vector<Complex> a, std::vector<Complex> b) {
  double worst = 0.0;
  for (const Complex& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [x](Complex p, Complex q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

TEST(HessenbergQr, MatchesEigenOnRandomHessenberg) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  for (std::size_t n : {1u, 2u, 5u, 17u, 40u}) {
    CVector h(n * n, 0.0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = (i == 0 ? 0 : i - 1); j < n; ++j) {
        h[i * n + j] = {g(rng), g(rng)};
        m(i, j) = h[i * n + j];
      }
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    std::vector<Complex> ref(solver.eigenvalues().begin(), solver.eigenvalues().end());
    const CVector ours = hessenberg_eigenvalues(h, n);
    ASSERT_EQ(ours.size(), n);
    EXPECT_LT(spectral_distance(ours, ref), 1e-9 * std::max(1.0, m.norm()));
  }
}

TEST(HessenbergQr, FreeChainHasCosineSpectrum) {
  const std::size_t n = 30;
  const SpectrumReport rep = spectrum(Lattice::homogeneous(0, n));
  std::vector<Complex> expect;
  for (std::size_t k = 1; k <= n; ++k) expect.push_back(2.0 * std::cos(k * std::numbers::pi / (n + 1)));
  sort_complex(expect);
  ASSERT_EQ(rep.eigenvalues.size(), n);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(std::abs(rep.eigenvalues[i] - expect[i]), 0.0, 1e-12);
  EXPECT_TRUE(rep.bound_levels.empty());
  EXPECT_LT(rep.max_imag, 1e-12);
}

TEST(HessenbergQr, ImpurityBindsOneLevel) {
  // A site potential V on the infinite chain binds one level at sign(V) sqrt(V^2 + 4).
  const double v = 3.0;
  CVector sites(201, 0.0);
  sites[100] = v;
  const SpectrumReport rep = spectrum(Lattice(-100, CVector(202, 1.0), sites));
  ASSERT_EQ(rep.bound_levels.size(), 1u);
  EXPECT_NEAR(rep.bound_levels[0].real(), std::sqrt(v * v + 4.0), 1e-10);
}

TEST(HessenbergQr, RejectsBadStorage) {
  EXPECT_THROW(hessenberg_eigenvalues(CVector(5, 0.0), 2), DimensionError);
}

TEST(HessenbergQr, IterationBudgetIsEnforced) {
  CVector h{0.0, 1.0, 1.0, 0.0};
  QrOptions tight;
  tight.max_iterations_per_eigenvalue = 0;
  EXPECT_THROW(hessenberg_eigenvalues(h, 2, tight), NumericalError);
}

}  // namespace
}  // namespace invislat
