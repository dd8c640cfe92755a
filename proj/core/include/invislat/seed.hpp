#pragma once

#include <vector>

#include "invislat/lattice.hpp"

namespace invislat {

enum class SeedKind { Cosh, Sinh, Explicit };

/// Factorization energy mu = 2 delta kappa cosh(omega) together with the seed recipe.
struct LevelSpec {
  double mu = 0.0;
  double omega = 0.0;
  int delta = 1;
  SeedKind kind = SeedKind::Cosh;
  double alpha = 0.0;

  static LevelSpec from_omega(double omega, int delta, SeedKind kind, double alpha, double kappa = 1.0);
  /// Throws ParameterError unless |mu| > 2 kappa.
  static LevelSpec from_energy(double mu, SeedKind kind, double alpha, double kappa = 1.0);
};

/// Checks omega > 0, delta = sign(mu) and 2 kappa cosh(omega) = |mu|.
void validate_level(const LevelSpec& level, double kappa);

/// Solution of the three-term recurrence at energy level.mu, stored as
/// mantissa * exp(log_scale) so that seeds growing like exp(omega |n|) never overflow.
class SeedSolution {
 public:
  SeedSolution() = default;
  SeedSolution(LevelSpec level, long first, CVector mantissa, std::vector<double> log_scale);

  const LevelSpec& level() const { return level_; }
  long first() const { return first_; }
  long last() const { return first_ + static_cast<long>(mantissa_.size()) - 1; }
  IndexRange range() const { return {first(), last()}; }
  bool covers(long first, long last) const { return first >= first_ && last <= this->last(); }

  Complex mantissa(long n) const { return mantissa_.at(index(n)); }
  double log_scale(long n) const { return log_scale_.at(index(n)); }
  /// Plain value; may overflow for large omega |n|.
  Complex value(long n) const;
  bool is_zero(long n) const { return mantissa(n) == Complex(0.0); }
  /// phi_n / phi_m without forming either value.
  Complex ratio(long n, long m) const;

  void set_level(const LevelSpec& level) { level_ = level; }

 private:
  std::size_t index(long n) const;

  LevelSpec level_;
  long first_ = 0;
  CVector mantissa_;
  std::vector<double> log_scale_;
};

/// Number of extra sites kept on each side of a lattice window when seeds are built.
inline constexpr long kSeedPadding = 4;

/// F(omega (n - alpha)), F = cosh or sinh, times (-1)^n when delta < 0, on [first, last].
/// Exact zeros are allowed; no recurrence check is made.
SeedSolution hyperbolic_sequence(const LevelSpec& level, SeedKind shape, long first, long last);

/// Cosh or Sinh seed over the lattice window plus kSeedPadding on each side.
/// Throws ParameterError for a Sinh seed with integer alpha and ValidationError when
/// the seed fails the recurrence on this lattice by more than 1e-10.
SeedSolution build_seed(const LevelSpec& level, const Lattice& lattice);

/// User-supplied seed values on [first, first + values.size() - 1]; validated against the
/// recurrence at 1e-8 and extended to the padded lattice window.
SeedSolution explicit_seed(const LevelSpec& level, const Lattice& lattice, long first, const CVector& values);

/// Largest relative recurrence residual
/// |kappa_n phi_{n-1} + kappa_{n+1} phi_{n+1} + (V_n - mu) phi_n| / (sum of magnitudes)
/// over every n with both neighbours stored.
double seed_residual(const Lattice& lattice, const SeedSolution& seed);

/// Extend by running the recurrence outward until [first, last] is covered.
SeedSolution extend_seed(const Lattice& lattice, const SeedSolution& seed, long first, long last);

}  // namespace invislat
