#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "invislat/families.hpp"
#include "invislat/lattice.hpp"
#include "invislat/seed.hpp"
#include "invislat/waveguide.hpp"

namespace invislat {

/// {"offset": int, "kappa_inf": real, "hops": [[re, im], ...], "sites": [[re, im], ...]}
std::string lattice_to_json(const Lattice& lattice);
Lattice lattice_from_json(const std::string& text);

/// {"kappa": real, "levels": [{"mu", "omega", "delta", "kind", "alpha"}, ...], "family": {...}}
/// The optional family block records the closed-form parameters the levels came from.
std::string levels_to_json(const std::vector<LevelSpec>& levels, double kappa,
                           const std::optional<FamilySpec>& family = std::nullopt);
std::vector<LevelSpec> levels_from_json(const std::string& text);
std::optional<FamilySpec> family_from_levels_json(const std::string& text);

std::string design_to_json(const ModulationDesign& design);
ModulationDesign design_from_json(const std::string& text);

/// Parameters of one CLI invocation. Values keep their textual form so that a saved
/// configuration reproduces the run exactly.
struct ExperimentConfig {
  std::string subcommand;
  std::map<std::string, std::string> parameters;
  std::string output_dir;

  bool operator==(const ExperimentConfig&) const = default;
};

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

std::string read_text_file(const std::string& path);

/// Writes to a sibling temporary file and renames it into place.
void write_text_file_atomic(const std::string& path, const std::string& content);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

}  // namespace invislat
