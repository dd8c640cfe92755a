#include "outputs.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cli.hpp"
#include "invislat/error.hpp"

namespace invislat::cli {

void OutputSet::commit() {
  std::vector<std::string> staged;
  auto discard = [&staged] {
    for (const std::string& p : staged) std::remove(p.c_str());
  };
  for (const auto& [path, content] : files_) {
    std::error_code ec;
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    const std::string tmp = path + ".partial";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      discard();
      throw ParameterError("cannot write '" + path + "'");
    }
    staged.push_back(tmp);
    out << content;
    out.close();
    if (!out) {
      discard();
      throw ParameterError("failed while writing '" + path + "'");
    }
  }
  for (std::size_t i = 0; i < files_.size(); ++i) {
    if (std::rename(staged[i].c_str(), files_[i].first.c_str()) != 0) {
      for (std::size_t j = i; j < staged.size(); ++j) std::remove(staged[j].c_str());
      throw ParameterError("cannot move output into place at '" + files_[i].first + "'");
    }
  }
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string default_output(const std::string& name, const std::string& dir_override) {
  if (!dir_override.empty()) return join_path(dir_override, name);
  const char* env = std::getenv(kOutputDirEnv);
  if (env != nullptr && *env != '\0') return join_path(env, name);
  return name;
}

std::string parent_dir(const std::string& path) {
  const std::filesystem::path p(path);
  return p.has_parent_path() ? p.parent_path().string() : std::string(".");
}

}  // namespace invislat::cli
