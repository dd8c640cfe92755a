#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "outputs.hpp"

namespace invislat::cli {

std::vector<std::string> figure_ids();

/// Stage the CSV files for one figure in dir. Throws ParameterError on an unknown id.
void figdata(const std::string& id, const std::string& dir, OutputSet& outputs, std::ostream& log);

}  // namespace invislat::cli
