#pragma once

#include <vector>

#include "invislat/lattice.hpp"

namespace invislat {

/// J0 for complex argument by its ascending series; accurate to about 1e-10 for |z| <= 10.
/// Throws ParameterError beyond that radius.
Complex bessel_j0(Complex z);

/// J0(Lambda (A_beta - i A_gamma) / 2 pi). A purely imaginary value i Gamma makes
/// modulated bonds behave as imaginary hoppings i Gamma Delta.
Complex effective_gamma(double lambda, double a_beta, double a_gamma);

/// Composite trapezoid estimate of the period average of exp(sign * i phi(z)) with
/// phi(z) = (A_beta - i A_gamma) (Lambda / 2 pi) sin(2 pi z / Lambda).
Complex period_average(double lambda, double a_beta, double a_gamma, int sign = 1, int points = 4096);

struct ModulationDesign {
  double lambda = 0.1;
  double a_beta = 0.0;
  double a_gamma = 0.0;
  double gamma = 0.0;
  long first_site = 0;
  std::vector<int> rho;        ///< modulation mask per site
  std::vector<double> delta;   ///< bare couplings on bonds first_site .. first_site + rho.size()
  std::vector<double> detuning;///< real on-site potentials carried over from the lattice

  double abeta_product() const;   ///< Lambda A_beta / 2 pi
  double agamma_product() const;  ///< Lambda A_gamma / 2 pi
};

/// Fixes Lambda A_beta / 2 pi = abeta_product and finds x = Lambda A_gamma / 2 pi in
/// [0, x_max] with Re J0(abeta_product - i x) = 0 by bracketing and bisection.
/// Throws NoSolutionError when no sign change exists.
ModulationDesign solve_modulation(double abeta_product, double lambda = 0.1, double x_max = 5.0);

/// Fill rho, delta and detuning for the target lattice. The mask outside the window is 0,
/// so the number of imaginary bonds must be even; otherwise RealizationError lists them.
ModulationDesign realize_lattice(const Lattice& lattice, ModulationDesign design);

/// Averaged lattice from the design: kappa_n = i Gamma Delta_n where the mask changes, else Delta_n.
Lattice reconstruct_lattice(const ModulationDesign& design, double kappa_inf = 1.0);

struct AveragingReport {
  double max_discrepancy = 0.0;  ///< max amplitude difference at multiples of Lambda, relative to max(1, |averaged|)
  double z_max = 0.0;
  std::size_t periods = 0;
  bool within_tolerance = false;
};

/// Integrates the full z-dependent coupled-mode equations for two waveguides with masks
/// (rho_left, rho_right) and bare coupling delta_coupling, starting in the left guide,
/// and compares against the averaged two-site model at every full period.
AveragingReport verify_averaging(const ModulationDesign& design, int rho_left, int rho_right,
                                 double delta_coupling, double tolerance, double z_max = 20.0,
                                 int steps_per_period = 200);

}  // namespace invislat
