#pragma once

#include <string>
#include <utility>
#include <vector>

namespace invislat::cli {

/// Files produced by one command. Nothing touches the final paths until commit(), and a
/// failed commit removes whatever it had staged.
class OutputSet {
 public:
  void add(std::string path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }
  void commit();
  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

/// Path for a default file name: inside the environment-selected directory when set, else ".".
std::string default_output(const std::string& name, const std::string& dir_override = {});

/// Directory part of a path, "." when there is none.
std::string parent_dir(const std::string& path);

std::string join_path(const std::string& dir, const std::string& name);

}  // namespace invislat::cli
