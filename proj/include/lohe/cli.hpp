#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace lohe {

struct CliOverrides {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> h;
  std::optional<double> t_end;
  std::optional<std::string> suite;
  bool renormalize = false;
};

/// Executes one experiment config. Returns the process exit code:
/// 0 success, 1 assertion failure or divergence, 2 config error.
int run_config(const std::string& config_path, const CliOverrides& overrides, std::ostream& log);

}  // namespace lohe
