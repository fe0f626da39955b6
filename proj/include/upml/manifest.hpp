#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace upml {

/// Reproducibility record for one command invocation.
struct RunManifest {
  std::string tool_version;
  std::string command;
  std::string config_digest;  ///< empty for commands without a config
  std::uint64_t seed = 0;
  std::string rng;
  std::string started;   ///< ISO 8601 UTC
  std::string finished;
  std::vector<std::string> outputs;
};

void write_manifest(const std::string& path, const RunManifest& m);

std::string utc_timestamp_now();

}  // namespace upml
