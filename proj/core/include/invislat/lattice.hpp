#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace invislat {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Inclusive integer index range; empty when last < first.
struct IndexRange {
  long first = 0;
  long last = -1;

  bool empty() const { return last < first; }
  std::size_t size() const { return empty() ? 0 : static_cast<std::size_t>(last - first + 1); }
  bool contains(long n) const { return n >= first && n <= last; }
};

/// Finite window of a one-dimensional tight-binding chain.
///
/// Sites run from offset() to last_site(). Bond n couples sites n-1 and n, and the
/// window stores bonds offset() .. last_site()+1, so there is one more hop than
/// there are sites. Outside the stored window the chain continues as the
/// homogeneous lattice with hopping kappa_inf and zero on-site potential.
class Lattice {
 public:
  Lattice() = default;
  Lattice(long offset, CVector hops, CVector sites, double kappa_inf = 1.0);

  static Lattice homogeneous(long first_site, std::size_t num_sites, double kappa = 1.0);

  long offset() const { return offset_; }
  long last_site() const { return offset_ + static_cast<long>(sites_.size()) - 1; }
  std::size_t num_sites() const { return sites_.size(); }
  IndexRange site_range() const { return {offset_, last_site()}; }
  IndexRange bond_range() const { return {offset_, last_site() + 1}; }
  double kappa_inf() const { return kappa_inf_; }

  std::span<const Complex> hops() const { return hops_; }
  std::span<const Complex> sites() const { return sites_; }

  /// Hopping on bond n, falling back to kappa_inf outside the window.
  Complex hop(long n) const;
  /// On-site potential at site n, zero outside the window.
  Complex site(long n) const;

  /// True when every stored hop and potential is real within tol.
  bool is_hermitian(double tol = 0.0) const;

  /// Sub-window over sites [first, last]; entries outside storage use the asymptotic values.
  Lattice crop(long first, long last) const;

 private:
  long offset_ = 0;
  double kappa_inf_ = 1.0;
  CVector hops_{Complex(1.0)};
  CVector sites_;
};

/// Hard-wall action of H on a vector indexed like the lattice sites.
CVector apply_hamiltonian(const Lattice& lattice, std::span<const Complex> psi);

/// Dense row-major matrix of the hard-wall Hamiltonian.
CVector hamiltonian_matrix(const Lattice& lattice);

/// Smallest index range outside which every hop is within tol of kappa_inf and every
/// potential is within tol of zero. Empty for a defect-free window. Throws
/// PreconditionError when the window edges themselves violate tol.
IndexRange defect_window(const Lattice& lattice, double tol);

/// Largest deviation from the asymptotic values among the outermost `edge` bonds and sites.
double edge_deviation(const Lattice& lattice, std::size_t edge = 4);

/// Square root with a fixed branch: results lie in the closed right half plane, and
/// arguments within a relative 1e-12 of the negative real axis map to +i sqrt|z|.
Complex branch_sqrt(Complex z);

/// Site signs s_n (offset-1 .. last_site+1, with s_{offset-1} = +1) of the diagonal
/// similarity that makes every hop canonical: positive real part, or zero real part
/// and positive imaginary part.
std::vector<int> canonical_gauge_signs(const Lattice& lattice);

/// Apply the canonical gauge.
Lattice canonical_gauge(const Lattice& lattice);

}  // namespace invislat
