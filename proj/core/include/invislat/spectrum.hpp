#pragma once

#include "invislat/lattice.hpp"

namespace invislat {

struct SpectrumReport {
  CVector eigenvalues;    ///< sorted by real part, then imaginary part
  CVector bound_levels;   ///< eigenvalues with |Re E| above the band edge
  double band_edge = 2.0; ///< 2 kappa_inf
  double max_imag = 0.0;  ///< max |Im E| over all eigenvalues
};

/// Truncated spectrum of the hard-wall Hamiltonian. A level counts as bound when
/// |Re E| > band_edge * (1 + edge_tol).
SpectrumReport spectrum(const Lattice& lattice, double edge_tol = 1e-5);

}  // namespace invislat
