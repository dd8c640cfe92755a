#include "invislat/seed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "invislat/error.hpp"

namespace invislat {

namespace {

struct Scaled {
  Complex mantissa;
  double log_scale;
};

Scaled make_scaled(Complex value, double log_scale) {
  const double mag = std::abs(value);
  if (mag == 0.0 || !std::isfinite(mag)) {
    if (!std::isfinite(mag)) throw NumericalError("seed value overflowed");
    return {0.0, 0.0};
  }
  return {value / mag, log_scale + std::log(mag)};
}

double log_abs_cosh(double y) {
  const double a = std::abs(y);
  if (a < 20.0) return std::log(std::cosh(a));
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double log_abs_sinh(double y) {
  const double a = std::abs(y);
  if (a < 20.0) return std::log(std::sinh(a));
  return a + std::log1p(-std::exp(-2.0 * a)) - std::numbers::ln2;
}

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

}  // namespace

LevelSpec LevelSpec::from_omega(double omega, int delta, SeedKind kind, double alpha, double kappa) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ParameterError("omega must be positive and finite");
  if (delta != 1 && delta != -1) throw ParameterError("delta must be +1 or -1");
  return {2.0 * delta * kappa * std::cosh(omega), omega, delta, kind, alpha};
}

LevelSpec LevelSpec::from_energy(double mu, SeedKind kind, double alpha, double kappa) {
  if (!(std::abs(mu) > 2.0 * kappa) || !std::isfinite(mu)) {
    throw ParameterError("level " + std::to_string(mu) + " lies inside the band [-2 kappa, 2 kappa]");
  }
  return {mu, std::acosh(std::abs(mu) / (2.0 * kappa)), mu > 0 ? 1 : -1, kind, alpha};
}

void validate_level(const LevelSpec& level, double kappa) {
  if (!(level.omega > 0.0) || !std::isfinite(level.omega)) throw ParameterError("omega must be positive and finite");
  if (level.delta != 1 && level.delta != -1) throw ParameterError("delta must be +1 or -1");
  if ((level.mu > 0) != (level.delta > 0)) throw ParameterError("delta must equal the sign of mu");
  const double expected = 2.0 * kappa * std::cosh(level.omega);
  if (std::abs(expected - std::abs(level.mu)) > 1e-9 * expected) {
    throw ParameterError("level energy " + std::to_string(level.mu) + " is inconsistent with omega " +
                         std::to_string(level.omega));
  }
  if (!std::isfinite(level.alpha)) throw ParameterError("alpha must be finite");
}

SeedSolution::SeedSolution(LevelSpec level, long first, CVector mantissa, std::vector<double> log_scale)
    : level_(level), first_(first), mantissa_(std::move(mantissa)), log_scale_(std::move(log_scale)) {
  if (mantissa_.size() != log_scale_.size()) throw DimensionError("seed mantissa and scale lengths differ");
}

std::size_t SeedSolution::index(long n) const {
  if (n < first_ || n > last()) {
    throw DimensionError("seed index " + std::to_string(n) + " outside [" + std::to_string(first_) + ", " +
                         std::to_string(last()) + "]");
  }
  return static_cast<std::size_t>(n - first_);
}

Complex SeedSolution::value(long n) const { return mantissa(n) * std::exp(log_scale(n)); }

Complex SeedSolution::ratio(long n, long m) const {
  const Complex den = mantissa(m);
  if (den == Complex(0.0)) throw SingularSeedError("seed vanishes at site " + std::to_string(m));
  return mantissa(n) / den * std::exp(log_scale(n) - log_scale(m));
}

SeedSolution hyperbolic_sequence(const LevelSpec& level, SeedKind shape, long first, long last) {
  if (shape == SeedKind::Explicit) throw ParameterError("hyperbolic_sequence needs a cosh or sinh shape");
  if (last < first) throw DimensionError("empty seed range");
  CVector mantissa;
  std::vector<double> log_scale;
  for (long n = first; n <= last; ++n) {
    const double y = level.omega * (static_cast<double>(n) - level.alpha);
    double sign = 1.0;
    double log_mag = 0.0;
    bool zero = false;
    if (shape == SeedKind::Cosh) {
      log_mag = log_abs_cosh(y);
    } else if (y == 0.0) {
      zero = true;
    } else {
      log_mag = log_abs_sinh(y);
      sign = y > 0 ? 1.0 : -1.0;
    }
    if (level.delta < 0 && (n % 2 != 0)) sign = -sign;
    mantissa.push_back(zero ? Complex(0.0) : Complex(sign));
    log_scale.push_back(zero ? 0.0 : log_mag);
  }
  return SeedSolution(level, first, std::move(mantissa), std::move(log_scale));
}

double seed_residual(const Lattice& lattice, const SeedSolution& seed) {
  const double mu = seed.level().mu;
  double worst = 0.0;
  for (long n = seed.first() + 1; n < seed.last(); ++n) {
    double ref = -std::numeric_limits<double>::infinity();
    for (long k = n - 1; k <= n + 1; ++k) {
      if (!seed.is_zero(k)) ref = std::max(ref, seed.log_scale(k));
    }
    if (!std::isfinite(ref)) continue;
    auto term = [&](long k) { return seed.is_zero(k) ? Complex(0.0) : seed.mantissa(k) * std::exp(seed.log_scale(k) - ref); };
    const Complex a = lattice.hop(n) * term(n - 1);
    const Complex b = lattice.hop(n + 1) * term(n + 1);
    const Complex c = (lattice.site(n) - mu) * term(n);
    const double scale = std::abs(a) + std::abs(b) + std::abs(c);
    if (scale > 0.0) worst = std::max(worst, std::abs(a + b + c) / scale);
  }
  return worst;
}

SeedSolution extend_seed(const Lattice& lattice, const SeedSolution& seed, long first, long last) {
  if (seed.last() - seed.first() < 1) throw DimensionError("seed extension needs at least two values");
  const double mu = seed.level().mu;
  std::vector<Scaled> values;
  for (long n = seed.first(); n <= seed.last(); ++n) values.push_back({seed.mantissa(n), seed.log_scale(n)});
  long lo = seed.first();

  auto combine = [](const Scaled& x, Complex cx, const Scaled& y, Complex cy) {
    const double ref = std::max(x.mantissa == Complex(0.0) ? -1e300 : x.log_scale,
                                y.mantissa == Complex(0.0) ? -1e300 : y.log_scale);
    if (ref < -1e299) throw SingularSeedError("seed vanishes on two consecutive sites");
    auto part = [ref](const Scaled& s, Complex c) {
      return s.mantissa == Complex(0.0) ? Complex(0.0) : c * s.mantissa * std::exp(s.log_scale - ref);
    };
    const Complex v = part(x, cx) + part(y, cy);
    return make_scaled(v, ref);
  };

  std::vector<Scaled> left;
  while (lo > first) {
    // phi_{n-1} = ((mu - V_n) phi_n - kappa_{n+1} phi_{n+1}) / kappa_n with n = lo
    const Scaled& p0 = left.empty() ? values[0] : left.back();
    const Scaled& p1 = left.size() >= 2 ? left[left.size() - 2] : (left.empty() ? values[1] : values[0]);
    const Complex kn = lattice.hop(lo);
    left.push_back(combine(p0, (mu - lattice.site(lo)) / kn, p1, -lattice.hop(lo + 1) / kn));
    --lo;
  }
  std::vector<Scaled> merged(left.rbegin(), left.rend());
  merged.insert(merged.end(), values.begin(), values.end());

  long hi = seed.last();
  while (hi < last) {
    // phi_{n+1} = ((mu - V_n) phi_n - kappa_n phi_{n-1}) / kappa_{n+1} with n = hi
    const Scaled p0 = merged[merged.size() - 1];
    const Scaled p1 = merged[merged.size() - 2];
    const Complex kn1 = lattice.hop(hi + 1);
    merged.push_back(combine(p0, (mu - lattice.site(hi)) / kn1, p1, -lattice.hop(hi) / kn1));
    ++hi;
  }

  CVector mantissa;
  std::vector<double> log_scale;
  for (const Scaled& s : merged) {
    mantissa.push_back(s.mantissa);
    log_scale.push_back(s.log_scale);
  }
  return SeedSolution(seed.level(), lo, std::move(mantissa), std::move(log_scale));
}

SeedSolution build_seed(const LevelSpec& level, const Lattice& lattice) {
  validate_level(level, lattice.kappa_inf());
  if (level.kind == SeedKind::Explicit) throw ParameterError("explicit seeds need their values; use explicit_seed");
  if (level.kind == SeedKind::Sinh && is_integer(level.alpha)) {
    throw ParameterError("alpha must be non-integer for a sinh seed");
  }
  SeedSolution seed =
      hyperbolic_sequence(level, level.kind, lattice.offset() - kSeedPadding, lattice.last_site() + kSeedPadding);
  const double residual = seed_residual(lattice, seed);
  if (residual > 1e-10) {
    throw ValidationError("hyperbolic seed does not solve this lattice (relative residual " +
                          std::to_string(residual) + ")");
  }
  return seed;
}

SeedSolution explicit_seed(const LevelSpec& level, const Lattice& lattice, long first, const CVector& values) {
  validate_level(level, lattice.kappa_inf());
  if (values.size() < 3) throw DimensionError("explicit seed needs at least three values");
  CVector mantissa;
  std::vector<double> log_scale;
  for (const Complex& v : values) {
    const Scaled s = make_scaled(v, 0.0);
    mantissa.push_back(s.mantissa);
    log_scale.push_back(s.log_scale);
  }
  LevelSpec spec = level;
  spec.kind = SeedKind::Explicit;
  SeedSolution seed(spec, first, std::move(mantissa), std::move(log_scale));
  const double residual = seed_residual(lattice, seed);
  if (residual > 1e-8) {
    throw ValidationError("explicit seed fails the recurrence (relative residual " + std::to_string(residual) + ")");
  }
  return extend_seed(lattice, seed, std::min(first, lattice.offset() - kSeedPadding),
                     std::max(seed.last(), lattice.last_site() + kSeedPadding));
}

}  // namespace invislat
