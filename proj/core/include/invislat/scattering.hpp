#pragma once

#include <span>
#include <vector>

#include "invislat/lattice.hpp"
#include "invislat/seed.hpp"

namespace invislat {

enum class ScatteringMethod { TransferMatrix, AnalyticProduct };

struct ScatteringResult {
  ScatteringMethod method = ScatteringMethod::TransferMatrix;
  std::vector<double> q;
  CVector r;
  CVector t;
  std::vector<double> phase;  ///< unwrapped arg t
  std::vector<bool> flagged;  ///< incident amplitude below 1e-12; r and t are NaN there
};

/// n uniform samples on (eps, pi - eps), endpoints included.
std::vector<double> default_q_grid(std::size_t samples = 512, double eps = 1e-3);

/// Transfer-matrix scattering. A right-moving wave exp(-i q n) is imposed beyond the
/// window and the recurrence is run leftward with E = 2 kappa_inf cos q; the left
/// solution is decomposed as A exp(-i q n) + B exp(i q n), t = 1/A, r = B/A.
///
/// t is reported in the gauge where the product of hops is positive, which makes it
/// independent of the sign convention of individual bonds. Throws PreconditionError
/// when the window edges deviate from the asymptotic lattice by more than edge_tol.
ScatteringResult scatter_numeric(const Lattice& lattice, std::span<const double> q, double edge_tol = 1e-6);

/// Per-level transmission factor (e^{-w/2} - d e^{w/2 + iq}) / (e^{w/2} - d e^{-w/2 + iq}).
Complex level_transmission(const LevelSpec& level, double q);

/// Continuous phase of level_transmission: q + pi [d = +1] - 2 arg(1 - d e^{-w} e^{iq}).
double level_phase(const LevelSpec& level, double q);

/// d(level_phase)/dq = (1 - e^{-2w}) / (1 - 2 d e^{-w} cos q + e^{-2w}).
double level_phase_slope(const LevelSpec& level, double q);

/// Product of level factors applied to a base lattice with coefficients (t1, r1).
/// A reflectionless base (r1 = 0) stays reflectionless.
ScatteringResult scatter_analytic(std::span<const LevelSpec> levels, std::span<const double> q,
                                  Complex t1 = 1.0, Complex r1 = 0.0);

/// Sum of level phases, continuous in q.
std::vector<double> transmission_phase(std::span<const LevelSpec> levels, std::span<const double> q);

/// Max |d phi / dq| over the samples.
double phase_flatness(std::span<const LevelSpec> levels, std::span<const double> q);

struct GroupDelay {
  double q0 = 0.0;
  double group_velocity = 0.0;  ///< 2 kappa sin q0
  double phase_slope = 0.0;     ///< d phi / dq at q0
  double tau = 0.0;             ///< phase_slope / group_velocity; positive means advancement
};

GroupDelay group_delay(std::span<const LevelSpec> levels, double q0, double kappa = 1.0);

/// Remove 2 pi jumps between consecutive samples.
std::vector<double> unwrap_phase(std::span<const double> phase);

}  // namespace invislat
