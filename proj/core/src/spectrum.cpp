#include "invislat/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "invislat/eigen.hpp"
#include "invislat/error.hpp"

namespace invislat {

SpectrumReport spectrum(const Lattice& lattice, double edge_tol) {
  if (lattice.num_sites() == 0) throw DimensionError("spectrum of an empty lattice");
  if (!(edge_tol >= 0.0)) throw ParameterError("edge tolerance must be non-negative");
  SpectrumReport report;
  report.band_edge = 2.0 * lattice.kappa_inf();
  report.eigenvalues = hessenberg_eigenvalues(hamiltonian_matrix(lattice), lattice.num_sites());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  const double threshold = report.band_edge * (1.0 + edge_tol);
  for (const Complex& e : report.eigenvalues) {
    report.max_imag = std::max(report.max_imag, std::abs(e.imag()));
    if (std::abs(e.real()) > threshold) report.bound_levels.push_back(e);
  }
  return report;
}

}  // namespace invislat
