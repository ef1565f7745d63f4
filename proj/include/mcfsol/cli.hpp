#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mcfsol {

inline constexpr const char* kVersion = "0.1.0";

struct CliOptions {
  std::string command;
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;  // csv | json
  std::optional<double> tol;
  bool force = false;
  int jobs = 1;
};

const std::vector<std::string>& command_names();

/// Runs one command and returns the process exit status: 0 on success,
/// 1 usage, 2 domain, 3 numerical (also used when verify finds a residual
/// above tolerance).
int run_command(const CliOptions& options, std::ostream& out, std::ostream& err);

}  // namespace mcfsol
