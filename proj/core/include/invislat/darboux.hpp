#pragma once

#include <vector>

#include "invislat/lattice.hpp"
#include "invislat/seed.hpp"

namespace invislat {

/// Intertwining operators of H - mu = Q R.
///
/// (R psi)_n = r_n psi_n + rbar_n psi_{n-1}
/// (Q psi)_n = q_n psi_n + qbar_n psi_{n+1},   q_n = -r_n,  qbar_n = -rbar_{n+1}
class FactorizationOps {
 public:
  FactorizationOps() = default;
  FactorizationOps(double mu, long first_bond, CVector r, CVector r_bar);

  double mu() const { return mu_; }
  long first() const { return first_; }
  long last() const { return first_ + static_cast<long>(r_.size()) - 1; }

  Complex r(long n) const { return r_.at(index(n)); }
  Complex r_bar(long n) const { return r_bar_.at(index(n)); }
  Complex q(long n) const { return -r(n); }
  Complex q_bar(long n) const { return -r_bar(n + 1); }

  /// Hard-wall R on a vector over sites [first_site, first_site + psi.size() - 1].
  CVector apply_R(std::span<const Complex> psi, long first_site) const;
  /// Hard-wall Q on a vector over sites [first_site, first_site + psi.size() - 1].
  CVector apply_Q(std::span<const Complex> psi, long first_site) const;

  /// R applied to a recurrence solution of the original lattice; the result solves the
  /// partner lattice at the same energy. The range loses one site on the left.
  SeedSolution transport(const SeedSolution& seed) const;

 private:
  std::size_t index(long n) const;

  double mu_ = 0.0;
  long first_ = 0;
  CVector r_;
  CVector r_bar_;
};

/// r_n = -sqrt(kappa_n phi_{n-1} / phi_n), rbar_n = -kappa_n / r_n over every bond the seed
/// supports. Throws SingularSeedError on a vanishing seed value.
FactorizationOps factorize(const Lattice& lattice, const SeedSolution& seed);

/// Partner lattice H2 = R Q + mu on the same window:
/// kappa2_n = kappa_n r_{n-1} / r_n,
/// V2_n = V_n + kappa_{n+1} phi_{n+1}/phi_n - kappa_n phi_n/phi_{n-1}.
Lattice darboux_step(const Lattice& lattice, const SeedSolution& seed);
Lattice darboux_step(const Lattice& lattice, const SeedSolution& seed, const FactorizationOps& ops);

struct BoundState {
  double mu = 0.0;
  long first = 0;
  CVector psi;            ///< normalized to sum |psi|^2 = 1
  double residual = 0.0;  ///< max |(H2 - mu) psi| on the partner window
};

/// Normalizable eigenvector of the partner at mu, the zero mode of Q.
/// Throws ValidationError when the state does not decay inside the window.
BoundState partner_bound_state(const Lattice& lattice, const SeedSolution& seed);

/// Two consecutive steps at +mu and -mu returning a lattice in canonical gauge.
struct LevelPair {
  Lattice lattice;
  FactorizationOps first;
  FactorizationOps second;
  std::vector<int> gauge;  ///< canonical gauge signs over sites offset-1 .. last+1
  SeedSolution second_seed;

  /// G R2 R1 applied to a solution of the original lattice.
  SeedSolution transport(const SeedSolution& seed) const;
};

/// Adds eigenvalues +mu and -mu. The second seed is the staggered image
/// phi2_n = 2 (-1)^n kappa_n phi_{n-1} / r_n.
LevelPair add_level_pair(const Lattice& lattice, const SeedSolution& seed);

}  // namespace invislat
