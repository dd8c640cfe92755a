#include "invislat/families.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "invislat/error.hpp"

namespace invislat {

namespace {

struct LogValue {
  double log_abs;
  int sign;
};

LogValue log_hyperbolic(FamilyKind kind, double y) {
  const double a = std::abs(y);
  if (kind == FamilyKind::Cosh) {
    return {a < 20.0 ? std::log(std::cosh(a)) : a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2, 1};
  }
  if (y == 0.0) throw ParameterError("sinh family evaluated on a node; alpha must be non-integer");
  const double l = a < 20.0 ? std::log(std::sinh(a)) : a + std::log1p(-std::exp(-2.0 * a)) - std::numbers::ln2;
  return {l, y > 0 ? 1 : -1};
}

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

}  // namespace

void validate_family(const FamilySpec& spec) {
  if (spec.levels < 1) throw ParameterError("levels must be at least 1");
  if (!(spec.omega > 0.0) || !std::isfinite(spec.omega)) throw ParameterError("omega must be positive and finite");
  if (!(spec.kappa > 0.0) || !std::isfinite(spec.kappa)) throw ParameterError("kappa must be positive and finite");
  if (!std::isfinite(spec.alpha)) throw ParameterError("alpha must be finite");
  if (spec.kind == FamilyKind::Sinh && is_integer(spec.alpha)) {
    throw ParameterError("alpha must be non-integer for the sinh family");
  }
}

Complex family_hop(const FamilySpec& spec, long n) {
  const double w = spec.omega;
  const double big_n = spec.levels;
  const double x = static_cast<double>(n) - spec.alpha;
  const LogValue a = log_hyperbolic(spec.kind, w * x);
  const LogValue b = log_hyperbolic(spec.kind, w * (x - 2.0 * big_n - 1.0));
  const LogValue c = log_hyperbolic(spec.kind, w * (x - big_n));
  const LogValue d = log_hyperbolic(spec.kind, w * (x - big_n - 1.0));
  const double magnitude = spec.kappa * std::exp(0.5 * (a.log_abs + b.log_abs - c.log_abs - d.log_abs));
  const int sign = a.sign * b.sign * c.sign * d.sign;
  return sign > 0 ? Complex(magnitude, 0.0) : Complex(0.0, magnitude);
}

std::vector<LevelSpec> family_levels(const FamilySpec& spec) {
  validate_family(spec);
  std::vector<LevelSpec> levels;
  for (int k = 1; k <= spec.levels; ++k) {
    const SeedKind shape =
        spec.kind == FamilyKind::Sinh || k % 2 == 0 ? SeedKind::Sinh : SeedKind::Cosh;
    for (int delta : {1, -1}) {
      levels.push_back(LevelSpec::from_omega(k * spec.omega, delta, shape, spec.alpha, spec.kappa));
    }
  }
  return levels;
}

double family_center(const FamilySpec& spec) { return spec.alpha + spec.levels + 0.5; }

long recommended_half_width(const FamilySpec& spec, double tol) {
  validate_family(spec);
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  const long center = std::lround(family_center(spec));
  constexpr long run = 8;
  constexpr long limit = 10'000'000;
  long quiet = 0;
  for (long h = 1; h < limit; ++h) {
    const double dev = std::max(std::abs(family_hop(spec, center - h) - spec.kappa),
                                std::abs(family_hop(spec, center + h) - spec.kappa));
    quiet = dev < tol ? quiet + 1 : 0;
    if (quiet == run) return h - run + 1;
  }
  throw NumericalError("family tails do not reach tolerance " + std::to_string(tol));
}

Lattice synthesize_family(const FamilySpec& spec, long first_site, std::size_t num_sites) {
  validate_family(spec);
  if (num_sites == 0) throw DimensionError("lattice needs at least one site");
  CVector hops;
  for (long n = first_site; n <= first_site + static_cast<long>(num_sites); ++n) hops.push_back(family_hop(spec, n));
  return Lattice(first_site, std::move(hops), CVector(num_sites, Complex(0.0)), spec.kappa);
}

Lattice synthesize_family_centered(const FamilySpec& spec, std::size_t num_sites) {
  const double half = 0.5 * (static_cast<double>(num_sites) - 1.0);
  const long first = std::lround(family_center(spec) - half);
  return synthesize_family(spec, first, num_sites);
}

Lattice iterate_family(const FamilySpec& spec, long first_site, std::size_t num_sites) {
  validate_family(spec);
  if (num_sites == 0) throw DimensionError("lattice needs at least one site");
  // Padding absorbs the edge error from extrapolating intermediate lattices as homogeneous.
  const long pad = 4L * spec.levels + 8;
  Lattice current = Lattice::homogeneous(first_site - pad, num_sites + 2 * static_cast<std::size_t>(pad), spec.kappa);
  const std::vector<LevelSpec> levels = family_levels(spec);
  std::vector<LevelPair> pairs;
  for (int p = 0; p < spec.levels; ++p) {
    const LevelSpec& level = levels[2 * static_cast<std::size_t>(p)];
    const long lo = current.offset() - kSeedPadding - 2L * p;
    const long hi = current.last_site() + kSeedPadding;
    SeedSolution seed = hyperbolic_sequence(level, level.kind, lo, hi);
    for (const LevelPair& previous : pairs) seed = previous.transport(seed);
    pairs.push_back(add_level_pair(current, seed));
    current = pairs.back().lattice;
  }
  return current.crop(first_site, first_site + static_cast<long>(num_sites) - 1);
}

ClosedFormCheck iterate_vs_closed_form(const FamilySpec& spec, long first_site, std::size_t num_sites) {
  ClosedFormCheck check;
  check.iterated = iterate_family(spec, first_site, num_sites);
  check.closed = synthesize_family(spec, first_site, num_sites);
  const auto a = check.iterated.hops();
  const auto b = check.closed.hops();
  for (std::size_t i = 0; i < a.size(); ++i) check.max_hop_residual = std::max(check.max_hop_residual, std::abs(a[i] - b[i]));
  for (const Complex& v : check.iterated.sites()) check.max_potential = std::max(check.max_potential, std::abs(v));
  return check;
}

}  // namespace invislat
