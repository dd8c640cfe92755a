#pragma once

#include <span>

#include "invislat/families.hpp"
#include "invislat/scattering.hpp"

namespace invislat {

/// Transfer-matrix scattering of a closed-form family, with hops evaluated and propagated in
/// quadruple precision over a window whose tails are below tail_tol.
///
/// For small omega the near-threshold levels make r(q) near the band edges sensitive to the
/// hops at roughly 1e14 relative, so a lattice rounded to double no longer is reflectionless
/// there; this path keeps rounding well below 1e-15.
ScatteringResult scatter_family_numeric(const FamilySpec& spec, std::span<const double> q, double tail_tol = 1e-18);

/// Half-width used by scatter_family_numeric, measured from the rounded defect center.
long extended_half_width(const FamilySpec& spec, double tail_tol = 1e-18);

}  // namespace invislat
