#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "figdata.hpp"
#include "invislat/dynamics.hpp"
#include "invislat/error.hpp"
#include "invislat/extended.hpp"
#include "invislat/families.hpp"
#include "invislat/io.hpp"
#include "invislat/scattering.hpp"
#include "invislat/waveguide.hpp"
#include "outputs.hpp"

namespace invislat::cli {

namespace {

using nlohmann::json;

struct SynthOptions {
  std::string kind;
  int levels = 1;
  double omega = 0.0;
  double alpha = 0.0;
  double kappa = 1.0;
  std::size_t sites = 400;
  std::optional<long> first_site;
  std::string out;
  std::string levels_out;
};

struct ScatterOptions {
  std::string lattice;
  std::string analytic;
  std::string family;
  std::size_t q_samples = 512;
  double edge_tol = 1e-6;
  std::string out;
  std::string analytic_out;
};

struct PacketOptions {
  double n0 = 70.0;
  double width = 10.0;
  double q0 = std::numbers::pi / 2;
  double dt = 0.005;
};

struct EvolveOptions {
  std::string lattice;
  PacketOptions packet;
  double tmax = 100.0;
  double sample_interval = 1.0;
  std::vector<double> probes;
  std::string out;
};

struct CompareOptions {
  std::string defect;
  std::string free;
  PacketOptions packet;
  double probe = 70.0;
  double defect_tol = kDefectRegionTol;
  std::string out;
};

struct DesignOptions {
  std::string lattice;
  double lambda = 0.1;
  double abeta_product = 2.0;
  std::string out;
};

struct FigdataOptions {
  std::string figure;
  std::string out_dir;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string output_dir;
  OutputSet outputs;

  std::string path_or_default(const std::string& given, const std::string& name) const {
    return given.empty() ? default_output(name, output_dir) : given;
  }
};

std::string fmt(double x) { return format_double(x); }

void add_packet_options(CLI::App* sub, PacketOptions& p) {
  sub->add_option("--n0", p.n0, "packet center is at site -n0");
  sub->add_option("--width", p.width, "Gaussian width in sites")->check(CLI::PositiveNumber);
  sub->add_option("--q0", p.q0, "carrier wavenumber")->check(CLI::Range(0.0, std::numbers::pi));
  sub->add_option("--dt", p.dt, "RK4 step")->check(CLI::PositiveNumber);
}

WavepacketSpec packet_spec(const PacketOptions& p) { return {p.n0, p.width, p.q0}; }

std::string scatter_csv(const ScatteringResult& result) {
  std::ostringstream csv;
  csv << "q,re_r,im_r,re_t,im_t,phase,abs_r2_plus_t2\n";
  for (std::size_t i = 0; i < result.q.size(); ++i) {
    const Complex r = result.r[i];
    const Complex t = result.t[i];
    csv << fmt(result.q[i]) << ',' << fmt(r.real()) << ',' << fmt(r.imag()) << ',' << fmt(t.real()) << ','
        << fmt(t.imag()) << ',' << fmt(result.phase[i]) << ',' << fmt(std::norm(r) + std::norm(t)) << '\n';
  }
  return csv.str();
}

void report_scatter(const ScatteringResult& result, const std::string& label, std::ostream& out) {
  double max_r = 0.0;
  double max_unitarity = 0.0;
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < result.q.size(); ++i) {
    if (result.flagged[i]) {
      ++flagged;
      continue;
    }
    max_r = std::max(max_r, std::abs(result.r[i]));
    max_unitarity = std::max(max_unitarity, std::abs(std::norm(result.r[i]) + std::norm(result.t[i]) - 1.0));
  }
  out << label << ": max|r| " << fmt(max_r) << ", max||r|^2+|t|^2-1| " << fmt(max_unitarity);
  if (flagged > 0) out << ", " << flagged << " flagged samples";
  out << '\n';
}

void cmd_synth(const SynthOptions& o, Context& ctx) {
  const FamilyKind kind = o.kind == "cosh" ? FamilyKind::Cosh : FamilyKind::Sinh;
  const FamilySpec spec{kind, o.levels, o.omega, o.alpha, o.kappa};
  validate_family(spec);
  const Lattice lattice =
      o.first_site ? synthesize_family(spec, *o.first_site, o.sites) : synthesize_family_centered(spec, o.sites);

  const double edge = edge_deviation(lattice);
  if (edge > 1e-10) {
    const long need = 2 * recommended_half_width(spec) + 1;
    ctx.err << "warning: hops at the window edges deviate from kappa by " << fmt(edge) << "; about " << need
            << " sites are needed for a homogeneous exterior\n";
  }

  const std::string lattice_path = ctx.path_or_default(o.out, "lattice.json");
  const std::string levels_path = o.levels_out.empty() ? join_path(parent_dir(lattice_path), "levels.json") : o.levels_out;
  const std::vector<LevelSpec> levels = family_levels(spec);
  ctx.outputs.add(lattice_path, lattice_to_json(lattice));
  ctx.outputs.add(levels_path, levels_to_json(levels, o.kappa, spec));
  ctx.out << "lattice: " << lattice.num_sites() << " sites from " << lattice.offset() << ", " << levels.size()
          << " bound levels\n";
}

void cmd_scatter(const ScatterOptions& o, Context& ctx) {
  const int sources = !o.lattice.empty() + !o.family.empty();
  if (sources > 1) throw ParameterError("--lattice and --family are mutually exclusive");
  if (sources == 0 && o.analytic.empty()) throw ParameterError("one of --lattice, --family or --analytic is required");

  std::optional<Lattice> lattice;
  std::optional<FamilySpec> family;
  std::vector<LevelSpec> levels;
  if (!o.lattice.empty()) lattice = lattice_from_json(read_text_file(o.lattice));
  if (!o.family.empty()) {
    family = family_from_levels_json(read_text_file(o.family));
    if (!family) throw ValidationError("'" + o.family + "' carries no family block");
    validate_family(*family);
  }
  if (!o.analytic.empty()) {
    levels = levels_from_json(read_text_file(o.analytic));
    for (const LevelSpec& level : levels) validate_level(level, 1.0);
  }

  const std::vector<double> q = default_q_grid(o.q_samples);
  const std::string out_path = ctx.path_or_default(o.out, "scatter.csv");
  if (sources == 0) {
    const ScatteringResult analytic = scatter_analytic(levels, q);
    ctx.outputs.add(out_path, scatter_csv(analytic));
    report_scatter(analytic, "analytic", ctx.out);
    return;
  }

  const ScatteringResult numeric = lattice ? scatter_numeric(*lattice, q, o.edge_tol) : scatter_family_numeric(*family, q);
  ctx.outputs.add(out_path, scatter_csv(numeric));
  report_scatter(numeric, "numeric", ctx.out);
  if (!levels.empty()) {
    const ScatteringResult analytic = scatter_analytic(levels, q);
    std::string analytic_path = o.analytic_out;
    if (analytic_path.empty()) {
      const std::filesystem::path p(out_path);
      analytic_path = join_path(parent_dir(out_path), p.stem().string() + "_analytic" + p.extension().string());
    }
    ctx.outputs.add(analytic_path, scatter_csv(analytic));
    report_scatter(analytic, "analytic", ctx.out);
    double max_dt = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (!numeric.flagged[i]) max_dt = std::max(max_dt, std::abs(numeric.t[i] - analytic.t[i]));
    }
    ctx.out << "max|t_numeric - t_analytic| " << fmt(max_dt) << '\n';
  }
}

void cmd_evolve(const EvolveOptions& o, Context& ctx) {
  const Lattice lattice = lattice_from_json(read_text_file(o.lattice));
  EvolutionOptions options;
  options.t_max = o.tmax;
  options.dt = o.packet.dt;
  options.sample_interval = o.sample_interval;
  options.probe_times = o.probes;
  for (double p : o.probes) {
    if (p < 0.0 || p > o.tmax) throw ParameterError("probe time " + fmt(p) + " lies outside [0, tmax]");
  }
  const EvolutionTrace trace = evolve(lattice, packet_spec(o.packet), options);

  const std::string out_path = ctx.path_or_default(o.out, "trace.csv");
  std::ostringstream csv;
  csv << "t,p_total,centroid\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    csv << fmt(trace.times[i]) << ',' << fmt(trace.total[i]) << ',' << fmt(trace.centroid[i]) << '\n';
  }
  ctx.outputs.add(out_path, csv.str());
  for (const ProfileSnapshot& snap : trace.probes) {
    std::ostringstream profile;
    profile << "n,p\n";
    for (std::size_t i = 0; i < snap.probability.size(); ++i) {
      profile << trace.first_site + static_cast<long>(i) << ',' << fmt(snap.probability[i]) << '\n';
    }
    ctx.outputs.add(join_path(parent_dir(out_path), "profile_t" + fmt(snap.time) + ".csv"), profile.str());
  }
  if (trace.contamination_time) {
    ctx.err << "warning: the packet reached the lattice edges at t = " << fmt(*trace.contamination_time)
            << "; later samples include wall reflections\n";
  }
  const auto [lo, hi] = std::minmax_element(trace.total.begin(), trace.total.end());
  ctx.out << "P_total in [" << fmt(*lo) << ", " << fmt(*hi) << "], final centroid " << fmt(trace.centroid.back())
          << '\n';
}

void cmd_compare(const CompareOptions& o, Context& ctx) {
  const Lattice defect = lattice_from_json(read_text_file(o.defect));
  const Lattice free = o.free.empty() ? Lattice::homogeneous(defect.offset(), defect.num_sites(), defect.kappa_inf())
                                      : lattice_from_json(read_text_file(o.free));
  if (free.offset() != defect.offset() || free.num_sites() != defect.num_sites()) {
    throw DimensionError("defect and free lattices must cover the same sites");
  }
  if (o.probe <= 0.0) throw ParameterError("--probe must be positive");
  const IndexRange region = defect_window(defect, o.defect_tol);

  EvolutionOptions options;
  options.t_max = o.probe;
  options.dt = o.packet.dt;
  options.probe_times = {o.probe};
  const WavepacketSpec packet = packet_spec(o.packet);
  const EvolutionTrace a = evolve(defect, packet, options);
  const EvolutionTrace b = evolve(free, packet, options);
  const double vg = 2.0 * free.kappa_inf() * std::sin(o.packet.q0);
  const ProbeComparison cmp = compare_probe(a, b, o.probe, vg, region);

  const auto [lo, hi] = std::minmax_element(a.total.begin(), a.total.end());
  json report;
  report["probe_time"] = cmp.time;
  report["group_velocity"] = vg;
  report["advancement"] = cmp.advancement;
  report["centroid_shift"] = cmp.centroid_shift;
  report["distortion"] = cmp.distortion;
  report["max_reflected_probability"] = cmp.reflected;
  report["p_total_min"] = *lo;
  report["p_total_max"] = *hi;
  report["p_total_final"] = a.total.back();
  report["defect_region"] = region.empty() ? json::array() : json::array({region.first, region.last});
  report["contamination_time"] = a.contamination_time ? json(*a.contamination_time) : json(nullptr);
  ctx.outputs.add(ctx.path_or_default(o.out, "compare.json"), report.dump(2) + "\n");
  if (a.contamination_time) ctx.err << "warning: the defect run reached the lattice edges\n";
  ctx.out << "advancement " << fmt(cmp.advancement) << ", distortion " << fmt(cmp.distortion) << ", P_total max "
          << fmt(*hi) << '\n';
}

void cmd_design(const DesignOptions& o, Context& ctx) {
  const Lattice lattice = lattice_from_json(read_text_file(o.lattice));
  ModulationDesign design = solve_modulation(o.abeta_product, o.lambda);
  design = realize_lattice(lattice, design);
  ctx.outputs.add(ctx.path_or_default(o.out, "design.json"), design_to_json(design));
  ctx.out << "A_beta " << fmt(design.a_beta) << ", A_gamma " << fmt(design.a_gamma) << ", Gamma " << fmt(design.gamma)
          << '\n';
}

void cmd_figdata(const FigdataOptions& o, Context& ctx) {
  const std::string dir = o.out_dir.empty() ? default_output(".", ctx.output_dir) : o.out_dir;
  figdata(o.figure, dir, ctx.outputs, ctx.out);
}

const std::vector<std::string> kPositional{"figure"};

std::vector<std::string> config_arguments(const ExperimentConfig& config) {
  std::vector<std::string> args{config.subcommand};
  for (const auto& [name, value] : config.parameters) {
    if (std::find(kPositional.begin(), kPositional.end(), name) == kPositional.end()) args.push_back("--" + name);
    args.push_back(value);
  }
  return args;
}

ExperimentConfig capture_config(const CLI::App& sub, const std::string& output_dir) {
  ExperimentConfig config;
  config.subcommand = sub.get_name();
  config.output_dir = output_dir;
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0 || opt->get_single_name() == "help") continue;
    std::string joined;
    for (const std::string& v : opt->results()) joined += (joined.empty() ? "" : ",") + v;
    config.parameters[opt->get_single_name()] = joined;
  }
  return config;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthesis, scattering and dynamics of lattices with prescribed bound states", "invislat"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string config_path;
  std::string save_config;
  std::string output_dir;
  app.add_option("--config", config_path, "replay a saved configuration (further flags override it)");
  app.add_option("--save-config", save_config, "write the configuration of this run to a JSON file");
  app.add_option("--output-dir", output_dir, "directory for outputs without an explicit path");

  SynthOptions synth;
  CLI::App* s = app.add_subcommand("synth", "closed-form cosh or sinh family lattice");
  s->add_option("--kind", synth.kind, "cosh or sinh")->required()->check(CLI::IsMember({"cosh", "sinh"}));
  s->add_option("--levels", synth.levels, "number of level pairs N")->required()->check(CLI::PositiveNumber);
  s->add_option("--omega", synth.omega, "level parameter omega")->required()->check(CLI::PositiveNumber);
  s->add_option("--alpha", synth.alpha, "seed shift");
  s->add_option("--kappa", synth.kappa, "asymptotic hopping")->check(CLI::PositiveNumber);
  s->add_option("--sites", synth.sites, "window size")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 22));
  s->add_option("--first-site", synth.first_site, "first site of the window (default: centered)");
  s->add_option("--out", synth.out, "lattice JSON path");
  s->add_option("--levels-out", synth.levels_out, "levels JSON path (default: levels.json next to --out)");

  ScatterOptions scatter;
  CLI::App* sc = app.add_subcommand("scatter", "reflection and transmission over the propagating band");
  sc->add_option("--lattice", scatter.lattice, "lattice JSON, double precision transfer matrices")
      ->check(CLI::ExistingFile);
  sc->add_option("--family", scatter.family, "levels JSON with a family block, extended precision")
      ->check(CLI::ExistingFile);
  sc->add_option("--analytic", scatter.analytic, "levels JSON for the closed-form product")->check(CLI::ExistingFile);
  sc->add_option("--q-samples", scatter.q_samples, "grid size")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  sc->add_option("--edge-tol", scatter.edge_tol, "allowed deviation of the window edges")->check(CLI::PositiveNumber);
  sc->add_option("--out", scatter.out, "CSV path");
  sc->add_option("--analytic-out", scatter.analytic_out, "CSV path for the closed form next to a numeric run");

  EvolveOptions evolve_opts;
  CLI::App* ev = app.add_subcommand("evolve", "Gaussian packet propagation");
  ev->add_option("--lattice", evolve_opts.lattice, "lattice JSON")->required()->check(CLI::ExistingFile);
  add_packet_options(ev, evolve_opts.packet);
  ev->add_option("--tmax", evolve_opts.tmax, "final time")->check(CLI::PositiveNumber);
  ev->add_option("--sample-interval", evolve_opts.sample_interval, "trace spacing")->check(CLI::PositiveNumber);
  ev->add_option("--probe", evolve_opts.probes, "times at which profiles are written")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  ev->add_option("--out", evolve_opts.out, "trace CSV path");

  CompareOptions compare;
  CLI::App* cm = app.add_subcommand("compare", "defect versus free propagation report");
  cm->add_option("--defect", compare.defect, "defect lattice JSON")->required()->check(CLI::ExistingFile);
  cm->add_option("--free", compare.free, "reference lattice JSON (default: homogeneous)")->check(CLI::ExistingFile);
  add_packet_options(cm, compare.packet);
  cm->add_option("--probe", compare.probe, "comparison time");
  cm->add_option("--defect-tol", compare.defect_tol, "deviation marking the defect region")->check(CLI::PositiveNumber);
  cm->add_option("--out", compare.out, "report JSON path");

  DesignOptions design;
  CLI::App* dm = app.add_subcommand("design-modulation", "waveguide modulation realizing a lattice");
  dm->add_option("--lattice", design.lattice, "lattice JSON")->required()->check(CLI::ExistingFile);
  dm->add_option("--lambda", design.lambda, "modulation period")->check(CLI::PositiveNumber);
  dm->add_option("--abeta-product", design.abeta_product, "Lambda A_beta / 2 pi")->check(CLI::NonNegativeNumber);
  dm->add_option("--out", design.out, "design JSON path");

  FigdataOptions fig;
  CLI::App* fd = app.add_subcommand("figdata", "CSV data behind one figure panel");
  fd->add_option("figure", fig.figure, "figure id")->required();
  fd->add_option("--out-dir", fig.out_dir, "output directory");

  std::vector<std::string> argv = args;
  auto parse = [&app](std::vector<std::string> list) {
    std::reverse(list.begin(), list.end());
    app.parse(list);
  };
  try {
    auto cfg = std::find(argv.begin(), argv.end(), "--config");
    if (cfg != argv.end() && cfg + 1 != argv.end()) {
      const ExperimentConfig config = config_from_json(read_text_file(*(cfg + 1)));
      std::vector<std::string> merged(argv.begin(), cfg);
      merged.insert(merged.end(), cfg + 2, argv.end());
      if (!config.output_dir.empty()) merged.insert(merged.begin(), {"--output-dir", config.output_dir});
      // Replayed flags go first so explicit flags on the command line win.
      auto sub = std::find(merged.begin(), merged.end(), config.subcommand);
      std::vector<std::string> replay = config_arguments(config);
      if (sub != merged.end()) {
        sub = merged.erase(sub);
        merged.insert(sub, replay.begin(), replay.end());
      } else {
        merged.insert(merged.begin(), replay.begin(), replay.end());
      }
      argv = std::move(merged);
    }
    parse(argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Parameter ? kExitParameter : kExitNumerical;
  }

  Context ctx{out, err, output_dir, {}};
  try {
    if (s->parsed()) cmd_synth(synth, ctx);
    if (sc->parsed()) cmd_scatter(scatter, ctx);
    if (ev->parsed()) cmd_evolve(evolve_opts, ctx);
    if (cm->parsed()) cmd_compare(compare, ctx);
    if (dm->parsed()) cmd_design(design, ctx);
    if (fd->parsed()) cmd_figdata(fig, ctx);
    if (!save_config.empty()) {
      const CLI::App* sub = app.get_subcommands().front();
      ctx.outputs.add(save_config, config_to_json(capture_config(*sub, output_dir)));
    }
    ctx.outputs.commit();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Parameter ? kExitParameter : kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace invislat::cli
