#include "invislat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invislat/error.hpp"

namespace invislat {

namespace {

constexpr Complex kMinusI(0.0, -1.0);

// out = -i H psi with hard walls.
void rhs(std::span<const Complex> hops, std::span<const Complex> sites, const CVector& psi, CVector& out) {
  const std::size_t m = psi.size();
  for (std::size_t i = 0; i < m; ++i) {
    Complex acc = sites[i] * psi[i];
    if (i > 0) acc += hops[i] * psi[i - 1];
    if (i + 1 < m) acc += hops[i + 1] * psi[i + 1];
    out[i] = kMinusI * acc;
  }
}

double edge_probability(const CVector& psi, std::size_t edge) {
  const std::size_t e = std::min(edge, psi.size() / 2);
  double p = 0.0;
  for (std::size_t i = 0; i < e; ++i) p += std::norm(psi[i]) + std::norm(psi[psi.size() - 1 - i]);
  return p;
}

}  // namespace

const ProfileSnapshot& EvolutionTrace::probe(double time) const {
  for (const ProfileSnapshot& s : probes) {
    if (std::abs(s.time - time) <= 1e-9 * std::max(1.0, std::abs(time))) return s;
  }
  throw PreconditionError("no profile stored at t = " + std::to_string(time));
}

CVector initial_wavepacket(const Lattice& lattice, const WavepacketSpec& packet) {
  if (!(packet.width > 0.0) || !std::isfinite(packet.width)) throw ParameterError("packet width must be positive");
  if (!std::isfinite(packet.n0) || !std::isfinite(packet.q0)) throw ParameterError("packet parameters must be finite");
  CVector psi(lattice.num_sites());
  double norm = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double n = static_cast<double>(lattice.offset() + static_cast<long>(i));
    const double x = (n + packet.n0) / packet.width;
    psi[i] = std::polar(std::exp(-x * x), -packet.q0 * n);
    norm += std::norm(psi[i]);
  }
  if (!(norm > 0.0)) throw ParameterError("packet has no weight inside the lattice window");
  norm = std::sqrt(norm);
  for (Complex& p : psi) p /= norm;
  return psi;
}

EvolutionTrace evolve(const Lattice& lattice, const WavepacketSpec& packet, const EvolutionOptions& options) {
  return evolve_state(lattice, initial_wavepacket(lattice, packet), options);
}

EvolutionTrace evolve_state(const Lattice& lattice, CVector psi, const EvolutionOptions& options) {
  if (psi.size() != lattice.num_sites()) throw DimensionError("state length does not match the lattice");
  if (!(options.t_max > 0.0) || !std::isfinite(options.t_max)) throw ParameterError("t_max must be positive");
  if (!(options.dt > 0.0)) throw ParameterError("dt must be positive");
  if (options.dt > 0.01 / lattice.kappa_inf() * (1.0 + 1e-12)) {
    throw ParameterError("dt must not exceed 0.01 / kappa");
  }
  if (!(options.sample_interval > 0.0)) throw ParameterError("sample interval must be positive");
  for (double t : options.probe_times) {
    if (!(t >= 0.0 && t <= options.t_max * (1.0 + 1e-12))) {
      throw ParameterError("probe time " + std::to_string(t) + " outside [0, t_max]");
    }
  }
  double p0 = 0.0;
  for (const Complex& z : psi) p0 += std::norm(z);
  if (edge_probability(psi, options.edge_sites) > options.edge_threshold * p0) {
    throw PreconditionError("initial state touches the lattice boundary");
  }

  const auto steps = static_cast<long>(std::ceil(options.t_max / options.dt - 1e-9));
  const double dt = options.t_max / static_cast<double>(steps);
  const long sample_every = std::max(1L, std::lround(options.sample_interval / dt));
  std::vector<long> probe_steps;
  for (double t : options.probe_times) probe_steps.push_back(std::lround(t / dt));

  EvolutionTrace trace;
  trace.first_site = lattice.offset();
  const auto hops = lattice.hops();
  const auto sites = lattice.sites();
  const std::size_t m = psi.size();
  CVector k1(m), k2(m), k3(m), k4(m), tmp(m);

  auto record = [&](long step) {
    const double t = static_cast<double>(step) * dt;
    double total = 0.0;
    double moment = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double p = std::norm(psi[i]);
      if (!std::isfinite(p)) throw NumericalError("non-finite amplitude at t = " + std::to_string(t));
      total += p;
      moment += p * static_cast<double>(trace.first_site + static_cast<long>(i));
    }
    if (step % sample_every == 0 || step == steps) {
      trace.times.push_back(t);
      trace.total.push_back(total);
      trace.centroid.push_back(moment / total);
    }
    for (std::size_t j = 0; j < probe_steps.size(); ++j) {
      if (probe_steps[j] != step) continue;
      ProfileSnapshot snap;
      snap.time = options.probe_times[j];
      snap.probability.resize(m);
      for (std::size_t i = 0; i < m; ++i) snap.probability[i] = std::norm(psi[i]);
      trace.probes.push_back(std::move(snap));
    }
    if (!trace.contamination_time && edge_probability(psi, options.edge_sites) > options.edge_threshold * total) {
      trace.contamination_time = t;
    }
  };

  record(0);
  for (long step = 1; step <= steps; ++step) {
    rhs(hops, sites, psi, k1);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
    rhs(hops, sites, tmp, k2);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
    rhs(hops, sites, tmp, k3);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = psi[i] + dt * k3[i];
    rhs(hops, sites, tmp, k4);
    for (std::size_t i = 0; i < m; ++i) psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    record(step);
  }
  trace.final_state = std::move(psi);
  return trace;
}

std::vector<double> normalized_profile(const ProfileSnapshot& snapshot) {
  double total = 0.0;
  for (double p : snapshot.probability) total += p;
  if (!(total > 0.0)) throw NumericalError("profile carries no probability");
  std::vector<double> out(snapshot.probability);
  for (double& p : out) p /= total;
  return out;
}

double profile_centroid(const ProfileSnapshot& snapshot, long first_site) {
  const std::vector<double> p = normalized_profile(snapshot);
  double c = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) c += p[i] * static_cast<double>(first_site + static_cast<long>(i));
  return c;
}

ProbeComparison compare_probe(const EvolutionTrace& defect, const EvolutionTrace& free_trace, double time,
                              double group_velocity, IndexRange defect_region, double max_inside) {
  if (!(group_velocity > 0.0)) throw ParameterError("group velocity must be positive");
  const ProfileSnapshot& a = defect.probe(time);
  const ProfileSnapshot& b = free_trace.probe(time);
  if (defect.first_site != free_trace.first_site || a.probability.size() != b.probability.size()) {
    throw DimensionError("defect and free traces cover different sites");
  }
  const std::vector<double> p = normalized_profile(a);
  const std::vector<double> f = normalized_profile(b);
  ProbeComparison out;
  out.time = time;
  double inside = 0.0;
  double d2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const long n = defect.first_site + static_cast<long>(i);
    if (!defect_region.empty() && defect_region.contains(n)) inside += p[i];
    if (!defect_region.empty() && n < defect_region.first) out.reflected += p[i];
    d2 += (p[i] - f[i]) * (p[i] - f[i]);
  }
  if (inside > max_inside) {
    throw PreconditionError("packet is not clear of the defect region at t = " + std::to_string(time) +
                            " (fraction inside " + std::to_string(inside) + ")");
  }
  out.centroid_shift = profile_centroid(a, defect.first_site) - profile_centroid(b, free_trace.first_site);
  out.advancement = out.centroid_shift / group_velocity;
  out.distortion = std::sqrt(d2);
  return out;
}

double time_of_flight(const EvolutionTrace& defect, const EvolutionTrace& free_trace, double time,
                      double group_velocity, IndexRange defect_region) {
  return compare_probe(defect, free_trace, time, group_velocity, defect_region).advancement;
}

double distortion(const EvolutionTrace& defect, const EvolutionTrace& free_trace, double time,
                  IndexRange defect_region) {
  return compare_probe(defect, free_trace, time, 1.0, defect_region).distortion;
}

}  // namespace invislat
