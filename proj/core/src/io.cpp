#include "invislat/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "invislat/error.hpp"

namespace invislat {

using nlohmann::json;

namespace {

json complex_array(std::span<const Complex> values) {
  json out = json::array();
  for (const Complex& z : values) out.push_back({z.real(), z.imag()});
  return out;
}

CVector parse_complex_array(const json& j, const char* field) {
  if (!j.is_array()) throw ValidationError(std::string("field '") + field + "' must be an array");
  CVector out;
  for (const json& item : j) {
    if (item.is_number()) {
      out.emplace_back(item.get<double>(), 0.0);
    } else if (item.is_array() && item.size() == 2 && item[0].is_number() && item[1].is_number()) {
      out.emplace_back(item[0].get<double>(), item[1].get<double>());
    } else {
      throw ValidationError(std::string("entries of '") + field + "' must be [re, im] pairs");
    }
  }
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T require(const json& j, const char* field) {
  if (!j.contains(field)) throw ValidationError(std::string("missing field '") + field + "'");
  try {
    return j.at(field).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("field '") + field + "' has the wrong type");
  }
}

const char* kind_name(SeedKind kind) {
  switch (kind) {
    case SeedKind::Cosh: return "cosh";
    case SeedKind::Sinh: return "sinh";
    case SeedKind::Explicit: return "explicit";
  }
  return "explicit";
}

SeedKind kind_from_name(const std::string& name) {
  if (name == "cosh") return SeedKind::Cosh;
  if (name == "sinh") return SeedKind::Sinh;
  if (name == "explicit") return SeedKind::Explicit;
  throw ValidationError("unknown seed kind '" + name + "'");
}

}  // namespace

std::string lattice_to_json(const Lattice& lattice) {
  json j;
  j["offset"] = lattice.offset();
  j["kappa_inf"] = lattice.kappa_inf();
  j["hops"] = complex_array(lattice.hops());
  j["sites"] = complex_array(lattice.sites());
  return j.dump(1) + "\n";
}

Lattice lattice_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw ValidationError("lattice JSON must be an object");
  const long offset = require<long>(j, "offset");
  const double kappa_inf = j.contains("kappa_inf") ? require<double>(j, "kappa_inf") : 1.0;
  if (!j.contains("hops") || !j.contains("sites")) throw ValidationError("lattice JSON needs 'hops' and 'sites'");
  return Lattice(offset, parse_complex_array(j["hops"], "hops"), parse_complex_array(j["sites"], "sites"), kappa_inf);
}

std::string levels_to_json(const std::vector<LevelSpec>& levels, double kappa,
                           const std::optional<FamilySpec>& family) {
  json j;
  j["kappa"] = kappa;
  j["levels"] = json::array();
  for (const LevelSpec& l : levels) {
    j["levels"].push_back(
        {{"mu", l.mu}, {"omega", l.omega}, {"delta", l.delta}, {"kind", kind_name(l.kind)}, {"alpha", l.alpha}});
  }
  if (family) {
    j["family"] = {{"kind", family->kind == FamilyKind::Cosh ? "cosh" : "sinh"},
                   {"levels", family->levels},
                   {"omega", family->omega},
                   {"alpha", family->alpha},
                   {"kappa", family->kappa}};
  }
  return j.dump(1) + "\n";
}

std::vector<LevelSpec> levels_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array()) {
    throw ValidationError("levels JSON needs a 'levels' array");
  }
  const double kappa = j.contains("kappa") ? require<double>(j, "kappa") : 1.0;
  std::vector<LevelSpec> out;
  for (const json& item : j["levels"]) {
    LevelSpec l;
    l.mu = require<double>(item, "mu");
    l.omega = require<double>(item, "omega");
    l.delta = require<int>(item, "delta");
    l.kind = item.contains("kind") ? kind_from_name(require<std::string>(item, "kind")) : SeedKind::Explicit;
    l.alpha = item.contains("alpha") ? require<double>(item, "alpha") : 0.0;
    validate_level(l, kappa);
    out.push_back(l);
  }
  return out;
}

std::optional<FamilySpec> family_from_levels_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("family")) return std::nullopt;
  const json& f = j["family"];
  FamilySpec spec;
  const std::string kind = require<std::string>(f, "kind");
  if (kind != "cosh" && kind != "sinh") throw ValidationError("unknown family kind '" + kind + "'");
  spec.kind = kind == "cosh" ? FamilyKind::Cosh : FamilyKind::Sinh;
  spec.levels = require<int>(f, "levels");
  spec.omega = require<double>(f, "omega");
  spec.alpha = require<double>(f, "alpha");
  spec.kappa = require<double>(f, "kappa");
  validate_family(spec);
  return spec;
}

std::string design_to_json(const ModulationDesign& d) {
  json j;
  j["lambda"] = d.lambda;
  j["a_beta"] = d.a_beta;
  j["a_gamma"] = d.a_gamma;
  j["abeta_product"] = d.abeta_product();
  j["agamma_product"] = d.agamma_product();
  j["gamma"] = d.gamma;
  j["first_site"] = d.first_site;
  j["rho"] = d.rho;
  j["delta"] = d.delta;
  j["detuning"] = d.detuning;
  return j.dump(1) + "\n";
}

ModulationDesign design_from_json(const std::string& text) {
  const json j = parse(text);
  ModulationDesign d;
  d.lambda = require<double>(j, "lambda");
  d.a_beta = require<double>(j, "a_beta");
  d.a_gamma = require<double>(j, "a_gamma");
  d.gamma = require<double>(j, "gamma");
  d.first_site = require<long>(j, "first_site");
  d.rho = require<std::vector<int>>(j, "rho");
  d.delta = require<std::vector<double>>(j, "delta");
  d.detuning = require<std::vector<double>>(j, "detuning");
  return d;
}

std::string config_to_json(const ExperimentConfig& config) {
  json j;
  j["subcommand"] = config.subcommand;
  j["output_dir"] = config.output_dir;
  j["parameters"] = config.parameters;
  return j.dump(1) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  const json j = parse(text);
  ExperimentConfig c;
  c.subcommand = require<std::string>(j, "subcommand");
  c.output_dir = j.contains("output_dir") ? require<std::string>(j, "output_dir") : std::string();
  if (j.contains("parameters")) c.parameters = require<std::map<std::string, std::string>>(j, "parameters");
  return c;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParameterError("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw ParameterError("failed while writing '" + path + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ParameterError("cannot move output into place at '" + path + "'");
  }
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace invislat
