#include "invislat/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invislat/error.hpp"

namespace invislat {

FactorizationOps::FactorizationOps(double mu, long first_bond, CVector r, CVector r_bar)
    : mu_(mu), first_(first_bond), r_(std::move(r)), r_bar_(std::move(r_bar)) {
  if (r_.size() != r_bar_.size()) throw DimensionError("r and rbar lengths differ");
}

std::size_t FactorizationOps::index(long n) const {
  if (n < first_ || n > last()) {
    throw DimensionError("bond " + std::to_string(n) + " outside the factorization range [" +
                         std::to_string(first_) + ", " + std::to_string(last()) + "]");
  }
  return static_cast<std::size_t>(n - first_);
}

CVector FactorizationOps::apply_R(std::span<const Complex> psi, long first_site) const {
  CVector out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const long n = first_site + static_cast<long>(i);
    out[i] = r(n) * psi[i];
    if (i > 0) out[i] += r_bar(n) * psi[i - 1];
  }
  return out;
}

CVector FactorizationOps::apply_Q(std::span<const Complex> psi, long first_site) const {
  CVector out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const long n = first_site + static_cast<long>(i);
    out[i] = q(n) * psi[i];
    if (i + 1 < psi.size()) out[i] += q_bar(n) * psi[i + 1];
  }
  return out;
}

SeedSolution FactorizationOps::transport(const SeedSolution& seed) const {
  const long lo = std::max(seed.first() + 1, first_);
  const long hi = std::min(seed.last(), last());
  if (hi < lo) throw DimensionError("seed and factorization ranges do not overlap");
  CVector mantissa;
  std::vector<double> log_scale;
  for (long n = lo; n <= hi; ++n) {
    const bool z0 = seed.is_zero(n);
    const bool z1 = seed.is_zero(n - 1);
    double ref = 0.0;
    if (!z0 && !z1) {
      ref = std::max(seed.log_scale(n), seed.log_scale(n - 1));
    } else if (!z0) {
      ref = seed.log_scale(n);
    } else if (!z1) {
      ref = seed.log_scale(n - 1);
    }
    Complex v = 0.0;
    if (!z0) v += r(n) * seed.mantissa(n) * std::exp(seed.log_scale(n) - ref);
    if (!z1) v += r_bar(n) * seed.mantissa(n - 1) * std::exp(seed.log_scale(n - 1) - ref);
    const double mag = std::abs(v);
    mantissa.push_back(mag > 0.0 ? v / mag : Complex(0.0));
    log_scale.push_back(mag > 0.0 ? ref + std::log(mag) : 0.0);
  }
  LevelSpec level = seed.level();
  level.kind = SeedKind::Explicit;
  return SeedSolution(level, lo, std::move(mantissa), std::move(log_scale));
}

FactorizationOps factorize(const Lattice& lattice, const SeedSolution& seed) {
  CVector r;
  CVector r_bar;
  for (long n = seed.first() + 1; n <= seed.last(); ++n) {
    if (seed.is_zero(n) || seed.is_zero(n - 1)) {
      throw SingularSeedError("seed vanishes near bond " + std::to_string(n) + "; choose a different alpha");
    }
    const Complex k = lattice.hop(n);
    const Complex rn = -branch_sqrt(k * seed.ratio(n - 1, n));
    r.push_back(rn);
    r_bar.push_back(-k / rn);
  }
  return FactorizationOps(seed.level().mu, seed.first() + 1, std::move(r), std::move(r_bar));
}

Lattice darboux_step(const Lattice& lattice, const SeedSolution& seed, const FactorizationOps& ops) {
  const long lo = lattice.offset();
  const long hi = lattice.last_site();
  if (!seed.covers(lo - 1, hi + 1) || ops.first() > lo - 1 || ops.last() < hi + 1) {
    throw DimensionError("seed must cover sites offset-2 .. last+1 of the lattice");
  }
  CVector hops;
  for (long n = lo; n <= hi + 1; ++n) hops.push_back(lattice.hop(n) * ops.r(n - 1) / ops.r(n));
  CVector sites;
  for (long n = lo; n <= hi; ++n) {
    sites.push_back(lattice.site(n) + lattice.hop(n + 1) * seed.ratio(n + 1, n) - lattice.hop(n) * seed.ratio(n, n - 1));
  }
  return Lattice(lo, std::move(hops), std::move(sites), lattice.kappa_inf());
}

Lattice darboux_step(const Lattice& lattice, const SeedSolution& seed) {
  const long lo = lattice.offset() - 2;
  const long hi = lattice.last_site() + 1;
  const SeedSolution& s = seed.covers(lo, hi) ? seed : extend_seed(lattice, seed, std::min(lo, seed.first()),
                                                                   std::max(hi, seed.last()));
  return darboux_step(lattice, s, factorize(lattice, s));
}

BoundState partner_bound_state(const Lattice& lattice, const SeedSolution& seed_in) {
  const long lo = lattice.offset();
  const long hi = lattice.last_site();
  const SeedSolution seed = seed_in.covers(lo - 2, hi + 1)
                                ? seed_in
                                : extend_seed(lattice, seed_in, std::min(lo - 2, seed_in.first()),
                                              std::max(hi + 1, seed_in.last()));
  const FactorizationOps ops = factorize(lattice, seed);
  const Lattice partner = darboux_step(lattice, seed, ops);

  // Zero mode of Q: psi_{n+1} = r_n r_{n+1} psi_n / kappa_{n+1}, accumulated in log space.
  CVector log_psi(partner.num_sites());
  log_psi[0] = 0.0;
  for (long n = lo; n < hi; ++n) {
    const auto i = static_cast<std::size_t>(n - lo);
    log_psi[i + 1] = log_psi[i] + std::log(ops.r(n) * ops.r(n + 1) / lattice.hop(n + 1));
  }
  double peak = -1e300;
  for (const Complex& l : log_psi) peak = std::max(peak, l.real());
  BoundState state;
  state.mu = seed.level().mu;
  state.first = lo;
  state.psi.resize(log_psi.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < log_psi.size(); ++i) {
    state.psi[i] = std::exp(log_psi[i] - peak);
    norm += std::norm(state.psi[i]);
  }
  norm = std::sqrt(norm);
  for (Complex& p : state.psi) p /= norm;

  const double tail = std::max(std::abs(state.psi.front()), std::abs(state.psi.back()));
  if (tail > 1e-6) {
    throw ValidationError("partner state does not decay inside the window (edge amplitude " + std::to_string(tail) +
                          "); the seed is not normalizable here");
  }
  const CVector h_psi = apply_hamiltonian(partner, state.psi);
  for (std::size_t i = 0; i < h_psi.size(); ++i) {
    state.residual = std::max(state.residual, std::abs(h_psi[i] - state.mu * state.psi[i]));
  }
  return state;
}

LevelPair add_level_pair(const Lattice& lattice, const SeedSolution& seed_in) {
  const long lo = lattice.offset();
  const long hi = lattice.last_site();
  const SeedSolution seed =
      seed_in.covers(lo - 3, hi + 1)
          ? seed_in
          : extend_seed(lattice, seed_in, std::min(lo - 3, seed_in.first()), std::max(hi + 1, seed_in.last()));

  LevelPair pair;
  pair.first = factorize(lattice, seed);
  const Lattice middle = darboux_step(lattice, seed, pair.first);

  LevelSpec level = seed.level();
  level.mu = -level.mu;
  level.delta = -level.delta;
  level.kind = SeedKind::Explicit;
  CVector mantissa;
  std::vector<double> log_scale;
  for (long n = pair.first.first(); n <= pair.first.last(); ++n) {
    const double stagger = (n % 2 == 0) ? 2.0 : -2.0;
    const Complex v = stagger * lattice.hop(n) * seed.mantissa(n - 1) / pair.first.r(n);
    const double mag = std::abs(v);
    mantissa.push_back(v / mag);
    log_scale.push_back(seed.log_scale(n - 1) + std::log(mag));
  }
  pair.second_seed = SeedSolution(level, pair.first.first(), std::move(mantissa), std::move(log_scale));
  pair.second = factorize(middle, pair.second_seed);
  const Lattice raw = darboux_step(middle, pair.second_seed, pair.second);
  pair.gauge = canonical_gauge_signs(raw);
  pair.lattice = canonical_gauge(raw);
  return pair;
}

SeedSolution LevelPair::transport(const SeedSolution& seed) const {
  const SeedSolution mapped = second.transport(first.transport(seed));
  const long sign_first = lattice.offset() - 1;
  const long sign_last = lattice.last_site() + 1;
  CVector mantissa;
  std::vector<double> log_scale;
  for (long n = mapped.first(); n <= mapped.last(); ++n) {
    const long k = std::clamp(n, sign_first, sign_last) - sign_first;
    mantissa.push_back(static_cast<double>(gauge[static_cast<std::size_t>(k)]) * mapped.mantissa(n));
    log_scale.push_back(mapped.log_scale(n));
  }
  return SeedSolution(mapped.level(), mapped.first(), std::move(mantissa), std::move(log_scale));
}

}  // namespace invislat
