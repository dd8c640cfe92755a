#pragma once

#include <cstddef>

#include "invislat/lattice.hpp"

namespace invislat {

struct QrOptions {
  int max_iterations_per_eigenvalue = 60;
  int exceptional_shift_every = 10;
};

/// Eigenvalues of a complex upper-Hessenberg matrix (row-major n x n, entries below
/// the first subdiagonal are ignored) by single-shift QR with Wilkinson shifts and
/// deflation. Throws NumericalError when an eigenvalue fails to converge.
CVector hessenberg_eigenvalues(CVector matrix, std::size_t n, const QrOptions& options = {});

}  // namespace invislat
