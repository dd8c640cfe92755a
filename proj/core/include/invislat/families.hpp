#pragma once

#include <vector>

#include "invislat/darboux.hpp"
#include "invislat/lattice.hpp"
#include "invislat/seed.hpp"

namespace invislat {

enum class FamilyKind { Cosh, Sinh };

/// Closed-form family carrying the 2N levels +-2 kappa cosh(k omega), k = 1..N.
struct FamilySpec {
  FamilyKind kind = FamilyKind::Cosh;
  int levels = 1;  ///< N, the number of level pairs
  double omega = 0.6;
  double alpha = 0.0;
  double kappa = 1.0;
};

/// Throws ParameterError on N < 1, omega <= 0, kappa <= 0, or a Sinh family with integer alpha.
void validate_family(const FamilySpec& spec);

/// Closed-form hop on bond n, evaluated in log space:
/// kappa sqrt(F(w x) F(w (x - 2N - 1)) / (F(w (x - N)) F(w (x - N - 1)))),  x = n - alpha.
Complex family_hop(const FamilySpec& spec, long n);

/// The 2N factorization levels, ordered k = 1..N with +mu_k before -mu_k.
std::vector<LevelSpec> family_levels(const FamilySpec& spec);

/// Midpoint of the bonds that differ from kappa: alpha + N + 1/2.
double family_center(const FamilySpec& spec);

/// Smallest h such that every hop further than h sites from the center is within tol of kappa.
long recommended_half_width(const FamilySpec& spec, double tol = 1e-13);

/// Closed-form lattice on sites [first_site, first_site + num_sites - 1], V = 0.
Lattice synthesize_family(const FamilySpec& spec, long first_site, std::size_t num_sites);

/// Closed-form lattice of num_sites sites centered on the defect.
Lattice synthesize_family_centered(const FamilySpec& spec, std::size_t num_sites);

/// The same window built by N level pairs on the homogeneous lattice. The i-th pair
/// uses the seed F_i(i omega (n - alpha)) carried through all earlier steps; F_i is
/// sinh for the Sinh family and alternates cosh, sinh, cosh, ... for the Cosh family.
Lattice iterate_family(const FamilySpec& spec, long first_site, std::size_t num_sites);

struct ClosedFormCheck {
  Lattice iterated;
  Lattice closed;
  double max_hop_residual = 0.0;  ///< max |kappa_iter - kappa_closed| over stored bonds
  double max_potential = 0.0;     ///< max |V_iter|
};

ClosedFormCheck iterate_vs_closed_form(const FamilySpec& spec, long first_site, std::size_t num_sites);

}  // namespace invislat
