#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scar/operators.hpp"

namespace scar::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kCapacityError = 3, kUsage = 64 };

struct RunConfig {
  std::string command;
  ModelConfig model;
  std::optional<Scheme> scheme;  // defaults from the initial state
  double dt = 0.02;
  double t_max = 40.0;
  std::string out;  // output directory; empty = primary artifact on stdout
  int threads = 1;
  std::uint64_t seed = 1;

  Scheme resolved_scheme() const;
};

Scheme default_scheme(StateTag initial);

/// Parses a JSON config. Unknown keys and wrongly typed values raise ConfigError.
RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& config);

/// Parses "name=value" into the model's term map.
void apply_term(ModelConfig& model, const std::string& assignment);

/// Entry point used by the executable and by in-process tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scar::cli
