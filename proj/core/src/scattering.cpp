#include "invislat/scattering.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "invislat/error.hpp"

namespace invislat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr Complex kI(0.0, 1.0);

void check_grid(std::span<const double> q) {
  for (double x : q) {
    if (!(x > 0.0 && x < std::numbers::pi)) throw ParameterError("q samples must lie in (0, pi)");
  }
}

// +1 or -1: the sign that makes the product of hops point along the positive real axis.
double hop_product_sign(const Lattice& lattice) {
  double angle = 0.0;
  for (const Complex& k : lattice.hops()) angle += std::arg(k);
  return std::cos(angle) >= 0.0 ? 1.0 : -1.0;
}

Complex level_reflection_factor(const LevelSpec& level, double q) {
  const double w = level.omega;
  const double d = level.delta;
  const Complex num = std::exp(0.5 * w) - d * std::exp(Complex(-0.5 * w, -q));
  const Complex den = std::exp(0.5 * w) - d * std::exp(Complex(-0.5 * w, q));
  return num / den;
}

}  // namespace

std::vector<double> default_q_grid(std::size_t samples, double eps) {
  if (samples < 2) throw ParameterError("q grid needs at least two samples");
  if (!(eps > 0.0 && eps < 0.5 * std::numbers::pi)) throw ParameterError("q grid margin must lie in (0, pi/2)");
  std::vector<double> q(samples);
  const double span = std::numbers::pi - 2.0 * eps;
  for (std::size_t i = 0; i < samples; ++i) q[i] = eps + span * static_cast<double>(i) / static_cast<double>(samples - 1);
  return q;
}

std::vector<double> unwrap_phase(std::span<const double> phase) {
  std::vector<double> out(phase.begin(), phase.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double jump = out[i] - out[i - 1];
    out[i] -= 2.0 * std::numbers::pi * std::round(jump / (2.0 * std::numbers::pi));
  }
  return out;
}

ScatteringResult scatter_numeric(const Lattice& lattice, std::span<const double> q, double edge_tol) {
  check_grid(q);
  const double deviation = edge_deviation(lattice);
  if (deviation > edge_tol) {
    throw PreconditionError("lattice edges deviate from the homogeneous chain by " + std::to_string(deviation) +
                            " (limit " + std::to_string(edge_tol) + "); enlarge the window");
  }
  const double kappa = lattice.kappa_inf();
  const double gauge = hop_product_sign(lattice);
  const long lo = lattice.offset();
  const long hi = lattice.last_site();

  ScatteringResult result;
  result.method = ScatteringMethod::TransferMatrix;
  result.q.assign(q.begin(), q.end());
  std::vector<double> raw_phase;
  for (double qk : q) {
    const double energy = 2.0 * kappa * std::cos(qk);
    Complex next = std::polar(1.0, -qk * static_cast<double>(hi + 2));  // psi_{n+1}
    Complex cur = std::polar(1.0, -qk * static_cast<double>(hi + 1));   // psi_n
    for (long n = hi + 1; n >= lo - 1; --n) {
      const Complex prev = ((energy - lattice.site(n)) * cur - lattice.hop(n + 1) * next) / lattice.hop(n);
      next = cur;
      cur = prev;
    }
    // cur = psi_{lo-2}, next = psi_{lo-1}; both lie in the free region.
    const long m1 = lo - 1;
    const Complex a = (cur - next * std::polar(1.0, -qk)) / (2.0 * kI * std::sin(qk));
    const Complex b = next - a;
    const Complex amp_in = a * std::polar(1.0, qk * static_cast<double>(m1));
    const Complex amp_back = b * std::polar(1.0, -qk * static_cast<double>(m1));
    const bool flagged = std::abs(amp_in) < 1e-12;
    result.flagged.push_back(flagged);
    if (flagged) {
      result.r.emplace_back(kNaN, kNaN);
      result.t.emplace_back(kNaN, kNaN);
      raw_phase.push_back(raw_phase.empty() ? 0.0 : raw_phase.back());
    } else {
      result.r.push_back(amp_back / amp_in);
      result.t.push_back(gauge / amp_in);
      raw_phase.push_back(std::arg(result.t.back()));
    }
  }
  result.phase = unwrap_phase(raw_phase);
  return result;
}

Complex level_transmission(const LevelSpec& level, double q) {
  const double w = level.omega;
  const double d = level.delta;
  const Complex num = std::exp(-0.5 * w) - d * std::exp(Complex(0.5 * w, q));
  const Complex den = std::exp(0.5 * w) - d * std::exp(Complex(-0.5 * w, q));
  return num / den;
}

double level_phase(const LevelSpec& level, double q) {
  const Complex u = static_cast<double>(level.delta) * std::exp(Complex(-level.omega, q));
  return q + (level.delta > 0 ? std::numbers::pi : 0.0) - 2.0 * std::arg(1.0 - u);
}

double level_phase_slope(const LevelSpec& level, double q) {
  const double e = std::exp(-level.omega);
  return (1.0 - e * e) / (1.0 - 2.0 * level.delta * e * std::cos(q) + e * e);
}

ScatteringResult scatter_analytic(std::span<const LevelSpec> levels, std::span<const double> q, Complex t1,
                                  Complex r1) {
  check_grid(q);
  ScatteringResult result;
  result.method = ScatteringMethod::AnalyticProduct;
  result.q.assign(q.begin(), q.end());
  result.flagged.assign(q.size(), false);
  for (double qk : q) {
    Complex t = t1;
    Complex r = r1;
    for (const LevelSpec& level : levels) {
      t *= level_transmission(level, qk);
      r *= level_reflection_factor(level, qk);
    }
    result.t.push_back(t);
    result.r.push_back(r);
  }
  result.phase = transmission_phase(levels, q);
  if (t1 != Complex(1.0)) {
    for (double& p : result.phase) p += std::arg(t1);
  }
  return result;
}

std::vector<double> transmission_phase(std::span<const LevelSpec> levels, std::span<const double> q) {
  std::vector<double> phase(q.size(), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (const LevelSpec& level : levels) phase[i] += level_phase(level, q[i]);
  }
  return phase;
}

double phase_flatness(std::span<const LevelSpec> levels, std::span<const double> q) {
  double worst = 0.0;
  for (double qk : q) {
    double slope = 0.0;
    for (const LevelSpec& level : levels) slope += level_phase_slope(level, qk);
    worst = std::max(worst, std::abs(slope));
  }
  return worst;
}

GroupDelay group_delay(std::span<const LevelSpec> levels, double q0, double kappa) {
  if (!(q0 > 1e-6 && q0 < std::numbers::pi - 1e-6)) throw ParameterError("q0 must lie inside (0, pi)");
  if (!(kappa > 0.0)) throw ParameterError("kappa must be positive");
  GroupDelay delay;
  delay.q0 = q0;
  delay.group_velocity = 2.0 * kappa * std::sin(q0);
  for (const LevelSpec& level : levels) delay.phase_slope += level_phase_slope(level, q0);
  delay.tau = delay.phase_slope / delay.group_velocity;
  return delay;
}

}  // namespace invislat
