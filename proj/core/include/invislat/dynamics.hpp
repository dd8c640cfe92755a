#pragma once

#include <optional>
#include <vector>

#include "invislat/lattice.hpp"

namespace invislat {

/// Deviation from the free chain that marks a site as part of the defect when packets are compared.
inline constexpr double kDefectRegionTol = 1e-2;

/// exp(-(n + n0)^2 / w^2) exp(-i q0 n), normalized to unit total probability.
struct WavepacketSpec {
  double n0 = 70.0;
  double width = 10.0;
  double q0 = 1.5707963267948966;
};

struct EvolutionOptions {
  double t_max = 100.0;
  double dt = 0.005;
  double sample_interval = 1.0;      ///< spacing of P_total and centroid samples
  std::vector<double> probe_times;   ///< times at which full profiles are stored
  std::size_t edge_sites = 10;       ///< width of the zone watched for wall contamination
  double edge_threshold = 1e-6;      ///< probability in the edge zone that triggers a warning
};

struct ProfileSnapshot {
  double time = 0.0;
  std::vector<double> probability;  ///< |psi_n|^2 over the lattice sites
};

struct EvolutionTrace {
  long first_site = 0;
  std::vector<double> times;
  std::vector<double> total;     ///< sum_n |psi_n|^2
  std::vector<double> centroid;  ///< sum_n n P_n / P_total
  std::vector<ProfileSnapshot> probes;
  CVector final_state;
  std::optional<double> contamination_time;  ///< first time the edge zone exceeded the threshold

  const ProfileSnapshot& probe(double time) const;
};

CVector initial_wavepacket(const Lattice& lattice, const WavepacketSpec& packet);

/// Classical fourth-order Runge-Kutta for i dpsi/dt = H psi with hard walls.
/// Throws ParameterError when dt > 0.01 / kappa_inf or the packet touches the edges at t = 0,
/// and NumericalError on non-finite amplitudes.
EvolutionTrace evolve(const Lattice& lattice, const WavepacketSpec& packet, const EvolutionOptions& options);
EvolutionTrace evolve_state(const Lattice& lattice, CVector psi, const EvolutionOptions& options);

/// Profile normalized to unit sum.
std::vector<double> normalized_profile(const ProfileSnapshot& snapshot);

/// Centroid of a probe profile.
double profile_centroid(const ProfileSnapshot& snapshot, long first_site);

struct ProbeComparison {
  double time = 0.0;
  double centroid_shift = 0.0;  ///< defect centroid minus free centroid, in sites
  double advancement = 0.0;     ///< centroid_shift / group velocity, in time units
  double distortion = 0.0;      ///< L2 distance of the normalized profiles
  double reflected = 0.0;       ///< normalized probability left of the defect region
};

/// Compare defect and free traces at a stored probe time. Both traces must cover the same
/// sites. Throws PreconditionError when more than max_inside of the defect packet still
/// sits inside defect_region.
ProbeComparison compare_probe(const EvolutionTrace& defect, const EvolutionTrace& free_trace, double time,
                              double group_velocity, IndexRange defect_region, double max_inside = 1e-3);

double time_of_flight(const EvolutionTrace& defect, const EvolutionTrace& free_trace, double time,
                      double group_velocity, IndexRange defect_region);
double distortion(const EvolutionTrace& defect, const EvolutionTrace& free_trace, double time,
                  IndexRange defect_region);

}  // namespace invislat
