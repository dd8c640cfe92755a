#include "figdata.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "invislat/dynamics.hpp"
#include "invislat/error.hpp"
#include "invislat/extended.hpp"
#include "invislat/families.hpp"
#include "invislat/io.hpp"
#include "invislat/scattering.hpp"

namespace invislat::cli {

namespace {

constexpr std::size_t kWindow = 400;
constexpr double kProbeTime = 70.0;

const FamilySpec kHermitian{FamilyKind::Cosh, 3, 0.6, 0.0, 1.0};
const FamilySpec kNonHermitian{FamilyKind::Sinh, 3, 0.01, 0.5, 1.0};
const std::vector<double> kPhaseOmegas{0.01, 0.1, 0.5, 1.0, 2.0, 4.0};
const std::vector<double> kFlatteningOmegas{0.6, 0.3, 0.2, 0.02};

std::string fmt(double x) { return format_double(x); }

std::string hop_profile(const FamilySpec& spec, long first, long last) {
  std::ostringstream csv;
  csv << "n,re_kappa,im_kappa\n";
  for (long n = first; n <= last; ++n) {
    const Complex k = family_hop(spec, n);
    csv << n << ',' << fmt(k.real()) << ',' << fmt(k.imag()) << '\n';
  }
  return csv.str();
}

std::string phase_curves(const FamilySpec& spec) {
  const std::vector<double> q = default_q_grid();
  const std::vector<LevelSpec> levels = family_levels(spec);
  const ScatteringResult analytic = scatter_analytic(levels, q);
  const ScatteringResult numeric = scatter_family_numeric(spec, q);
  // arg t is only defined mod 2 pi; put the numeric branch on the analytic one.
  const double shift =
      2.0 * std::numbers::pi * std::round((analytic.phase.front() - numeric.phase.front()) / (2.0 * std::numbers::pi));
  std::ostringstream csv;
  csv << "q,phase_analytic,phase_numeric,abs_t_numeric,abs_r_numeric\n";
  for (std::size_t i = 0; i < q.size(); ++i) {
    csv << fmt(q[i]) << ',' << fmt(analytic.phase[i]) << ',' << fmt(numeric.phase[i] + shift) << ','
        << fmt(std::abs(numeric.t[i])) << ',' << fmt(std::abs(numeric.r[i])) << '\n';
  }
  return csv.str();
}

std::string single_level_phases(int delta) {
  const std::vector<double> q = default_q_grid();
  std::ostringstream csv;
  csv << "q,q_over_pi";
  for (double w : kPhaseOmegas) csv << ",phi_w" << fmt(w);
  csv << '\n';
  for (double qk : q) {
    csv << fmt(qk) << ',' << fmt(qk / std::numbers::pi);
    for (double w : kPhaseOmegas) csv << ',' << fmt(level_phase(LevelSpec::from_omega(w, delta, SeedKind::Cosh, 0.0), qk));
    csv << '\n';
  }
  return csv.str();
}

std::string flattening_profiles() {
  std::ostringstream csv;
  csv << "n";
  for (double w : kFlatteningOmegas) csv << ",kappa_w" << fmt(w);
  csv << '\n';
  for (long n = -200; n <= 210; ++n) {
    csv << n;
    for (double w : kFlatteningOmegas) csv << ',' << fmt(family_hop({FamilyKind::Cosh, 3, w, 0.0, 1.0}, n).real());
    csv << '\n';
  }
  return csv.str();
}

struct PacketRuns {
  EvolutionTrace defect;
  EvolutionTrace free;
};

PacketRuns run_packets(const FamilySpec& spec) {
  const Lattice lattice = synthesize_family_centered(spec, kWindow);
  const Lattice free = Lattice::homogeneous(lattice.offset(), kWindow, spec.kappa);
  EvolutionOptions options;
  options.t_max = 100.0;
  for (int t = 0; t <= 100; ++t) options.probe_times.push_back(t);
  const WavepacketSpec packet;
  return {evolve(lattice, packet, options), evolve(free, packet, options)};
}

std::string space_time(const EvolutionTrace& trace) {
  std::ostringstream csv;
  csv << "t,n,p\n";
  for (const ProfileSnapshot& snap : trace.probes) {
    for (std::size_t i = 0; i < snap.probability.size(); ++i) {
      csv << fmt(snap.time) << ',' << trace.first_site + static_cast<long>(i) << ',' << fmt(snap.probability[i]) << '\n';
    }
  }
  return csv.str();
}

std::string probe_profiles(const PacketRuns& runs) {
  const ProfileSnapshot& a = runs.defect.probe(kProbeTime);
  const ProfileSnapshot& b = runs.free.probe(kProbeTime);
  std::ostringstream csv;
  csv << "n,p_defect,p_free\n";
  for (std::size_t i = 0; i < a.probability.size(); ++i) {
    csv << runs.defect.first_site + static_cast<long>(i) << ',' << fmt(a.probability[i]) << ',' << fmt(b.probability[i])
        << '\n';
  }
  return csv.str();
}

std::string total_probability(const PacketRuns& runs) {
  std::ostringstream csv;
  csv << "t,p_total_defect,p_total_free\n";
  for (std::size_t i = 0; i < runs.defect.times.size(); ++i) {
    csv << fmt(runs.defect.times[i]) << ',' << fmt(runs.defect.total[i]) << ',' << fmt(runs.free.total[i]) << '\n';
  }
  return csv.str();
}

}  // namespace

std::vector<std::string> figure_ids() {
  return {"fig1a", "fig1b", "fig1c", "fig1d", "fig2a", "fig2b", "fig3a", "fig3b",
          "fig3c", "fig4",  "fig5a", "fig5b", "fig5c"};
}

void figdata(const std::string& id, const std::string& dir, OutputSet& outputs, std::ostream& log) {
  auto stage = [&](const std::string& name, std::string content) {
    const std::string path = join_path(dir, name);
    outputs.add(path, std::move(content));
    log << "staged " << path << '\n';
  };
  if (id == "fig1a") {
    stage("fig1a.csv", hop_profile(kHermitian, -15, 25));
  } else if (id == "fig1b") {
    stage("fig1b.csv", hop_profile(kNonHermitian, -15, 25));
  } else if (id == "fig1c") {
    stage("fig1c.csv", phase_curves(kHermitian));
  } else if (id == "fig1d") {
    stage("fig1d.csv", phase_curves(kNonHermitian));
  } else if (id == "fig2a") {
    stage("fig2a.csv", single_level_phases(1));
  } else if (id == "fig2b") {
    stage("fig2b.csv", single_level_phases(-1));
  } else if (id == "fig4") {
    stage("fig4.csv", flattening_profiles());
  } else if (id == "fig3a" || id == "fig3b" || id == "fig3c" || id == "fig5a" || id == "fig5b" || id == "fig5c") {
    const PacketRuns runs = run_packets(id[3] == '3' ? kHermitian : kNonHermitian);
    const char panel = id[4];
    if (panel == 'a') stage(id + ".csv", space_time(runs.defect));
    if (panel == 'b') stage(id + ".csv", space_time(runs.free));
    if (panel == 'c') {
      stage(id + ".csv", probe_profiles(runs));
      stage(id + "_total.csv", total_probability(runs));
    }
  } else {
    std::string known;
    for (const std::string& k : figure_ids()) known += (known.empty() ? "" : ", ") + k;
    throw ParameterError("unknown figure id '" + id + "' (known: " + known + ")");
  }
}

}  // namespace invislat::cli
