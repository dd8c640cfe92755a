#include "invislat/waveguide.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "invislat/error.hpp"

namespace invislat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI(0.0, 1.0);

bool is_real(const Complex& z) { return std::abs(z.imag()) <= 1e-12 * std::abs(z); }
bool is_imaginary(const Complex& z) { return std::abs(z.real()) <= 1e-12 * std::abs(z); }

}  // namespace

double ModulationDesign::abeta_product() const { return lambda * a_beta / kTwoPi; }
double ModulationDesign::agamma_product() const { return lambda * a_gamma / kTwoPi; }

Complex bessel_j0(Complex z) {
  if (!(std::abs(z) <= 10.0)) throw ParameterError("bessel_j0 series is limited to |z| <= 10");
  const Complex x = -0.25 * z * z;
  Complex term = 1.0;
  Complex sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= x / static_cast<double>(k * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum)) && k > std::abs(z)) break;
  }
  return sum;
}

Complex effective_gamma(double lambda, double a_beta, double a_gamma) {
  if (!(lambda > 0.0)) throw ParameterError("modulation period must be positive");
  return bessel_j0(lambda * Complex(a_beta, -a_gamma) / kTwoPi);
}

Complex period_average(double lambda, double a_beta, double a_gamma, int sign, int points) {
  if (!(lambda > 0.0)) throw ParameterError("modulation period must be positive");
  if (points < 2) throw ParameterError("quadrature needs at least two points");
  const Complex amplitude = Complex(a_beta, -a_gamma) * (lambda / kTwoPi);
  Complex sum = 0.0;
  for (int j = 0; j < points; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(points);
    sum += std::exp(static_cast<double>(sign) * kI * amplitude * std::sin(theta));
  }
  return sum / static_cast<double>(points);
}

ModulationDesign solve_modulation(double abeta_product, double lambda, double x_max) {
  if (!(lambda > 0.0)) throw ParameterError("modulation period must be positive");
  if (!(x_max > 0.0) || !std::isfinite(abeta_product)) throw ParameterError("invalid modulation search range");
  auto f = [abeta_product](double x) { return bessel_j0(Complex(abeta_product, -x)).real(); };

  constexpr int scan = 500;
  double a = 0.0;
  double fa = f(a);
  double b = a;
  bool bracketed = fa == 0.0;
  for (int i = 1; i <= scan && !bracketed; ++i) {
    b = x_max * static_cast<double>(i) / scan;
    const double fb = f(b);
    if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) {
      bracketed = true;
      break;
    }
    a = b;
    fa = fb;
  }
  if (!bracketed) {
    throw NoSolutionError("Re J0(" + std::to_string(abeta_product) + " - i x) has no root for x in [0, " +
                          std::to_string(x_max) + "]");
  }
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
    const double c = 0.5 * (a + b);
    const double fc = f(c);
    if (fc == 0.0) {
      a = b = c;
      break;
    }
    if ((fa < 0.0) == (fc < 0.0)) {
      a = c;
      fa = fc;
    } else {
      b = c;
    }
  }
  const double x = 0.5 * (a + b);
  ModulationDesign design;
  design.lambda = lambda;
  design.a_beta = kTwoPi * abeta_product / lambda;
  design.a_gamma = kTwoPi * x / lambda;
  design.gamma = bessel_j0(Complex(abeta_product, -x)).imag();
  return design;
}

ModulationDesign realize_lattice(const Lattice& lattice, ModulationDesign design) {
  const long lo = lattice.offset();
  const long hi = lattice.last_site();
  std::vector<long> imaginary;
  for (long n = lo; n <= hi + 1; ++n) {
    const Complex k = lattice.hop(n);
    if (is_imaginary(k) && !is_real(k)) {
      imaginary.push_back(n);
    } else if (!is_real(k)) {
      throw RealizationError("bond " + std::to_string(n) + " is neither real nor imaginary");
    }
  }
  for (long n = lo; n <= hi; ++n) {
    const Complex v = lattice.site(n);
    if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v))) {
      throw RealizationError("site " + std::to_string(n) + " has a complex potential");
    }
  }
  if (!imaginary.empty() && design.gamma == 0.0) {
    throw RealizationError("imaginary bonds need a design with nonzero Gamma");
  }
  if (imaginary.size() % 2 != 0) {
    std::string list;
    for (long n : imaginary) list += (list.empty() ? "" : ", ") + std::to_string(n);
    throw RealizationError("no consistent modulation mask: odd number of imaginary bonds (" + list +
                           ") between unmodulated ends");
  }
  design.first_site = lo;
  design.rho.assign(lattice.num_sites(), 0);
  design.delta.clear();
  design.detuning.clear();
  int previous = 0;
  for (long n = lo; n <= hi + 1; ++n) {
    const Complex k = lattice.hop(n);
    const bool imag = is_imaginary(k) && !is_real(k);
    if (n <= hi) {
      const int current = imag ? 1 - previous : previous;
      design.rho[static_cast<std::size_t>(n - lo)] = current;
      previous = current;
    }
    design.delta.push_back(imag ? k.imag() / design.gamma : k.real());
  }
  for (long n = lo; n <= hi; ++n) design.detuning.push_back(lattice.site(n).real());
  return design;
}

Lattice reconstruct_lattice(const ModulationDesign& design, double kappa_inf) {
  const std::size_t m = design.rho.size();
  if (design.delta.size() != m + 1 || design.detuning.size() != m) {
    throw DimensionError("design mask, couplings and detunings have inconsistent lengths");
  }
  auto mask = [&](long i) { return i < 0 || i >= static_cast<long>(m) ? 0 : design.rho[static_cast<std::size_t>(i)]; };
  CVector hops;
  for (std::size_t i = 0; i <= m; ++i) {
    const bool straddles = mask(static_cast<long>(i) - 1) != mask(static_cast<long>(i));
    hops.push_back(straddles ? kI * design.gamma * design.delta[i] : Complex(design.delta[i]));
  }
  CVector sites(design.detuning.begin(), design.detuning.end());
  return Lattice(design.first_site, std::move(hops), std::move(sites), kappa_inf);
}

AveragingReport verify_averaging(const ModulationDesign& design, int rho_left, int rho_right, double delta_coupling,
                                 double tolerance, double z_max, int steps_per_period) {
  if ((rho_left != 0 && rho_left != 1) || (rho_right != 0 && rho_right != 1)) {
    throw ParameterError("mask entries must be 0 or 1");
  }
  if (!(design.lambda > 0.0) || !(z_max > 0.0) || steps_per_period < 4) {
    throw ParameterError("averaging check needs positive period, length and at least 4 steps per period");
  }
  const Complex amplitude(design.a_beta, -design.a_gamma);
  const double k = kTwoPi / design.lambda;
  const double h = design.lambda / steps_per_period;
  const auto periods = static_cast<std::size_t>(std::floor(z_max / design.lambda + 1e-9));

  auto derivative = [&](double z, const std::array<Complex, 2>& c) {
    const Complex m = amplitude * std::cos(k * z);
    const Complex m_left = static_cast<double>(rho_left) * m;
    const Complex m_right = static_cast<double>(rho_right) * m;
    return std::array<Complex, 2>{-kI * (m_left * c[0] + delta_coupling * c[1]),
                                  -kI * (delta_coupling * c[0] + m_right * c[1])};
  };
  auto axpy = [](const std::array<Complex, 2>& a, double s, const std::array<Complex, 2>& b) {
    return std::array<Complex, 2>{a[0] + s * b[0], a[1] + s * b[1]};
  };

  const Complex coupling = rho_left != rho_right
                               ? delta_coupling * effective_gamma(design.lambda, design.a_beta, design.a_gamma)
                               : Complex(delta_coupling);
  AveragingReport report;
  report.z_max = static_cast<double>(periods) * design.lambda;
  report.periods = periods;
  std::array<Complex, 2> c{1.0, 0.0};
  for (std::size_t p = 1; p <= periods; ++p) {
    for (int s = 0; s < steps_per_period; ++s) {
      const double z = static_cast<double>(p - 1) * design.lambda + s * h;
      const auto k1 = derivative(z, c);
      const auto k2 = derivative(z + 0.5 * h, axpy(c, 0.5 * h, k1));
      const auto k3 = derivative(z + 0.5 * h, axpy(c, 0.5 * h, k2));
      const auto k4 = derivative(z + h, axpy(c, h, k3));
      for (int j = 0; j < 2; ++j) c[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    if (!std::isfinite(std::abs(c[0])) || !std::isfinite(std::abs(c[1]))) {
      throw NumericalError("coupled-mode integration diverged");
    }
    const double z = static_cast<double>(p) * design.lambda;
    const Complex left = std::cos(coupling * z);
    const Complex right = -kI * std::sin(coupling * z);
    const double scale = std::max({1.0, std::abs(left), std::abs(right)});
    report.max_discrepancy =
        std::max({report.max_discrepancy, std::abs(c[0] - left) / scale, std::abs(c[1] - right) / scale});
  }
  report.within_tolerance = report.max_discrepancy <= tolerance;
  return report;
}

}  // namespace invislat
