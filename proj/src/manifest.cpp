#include "upml/manifest.hpp"

#include <ctime>

#include "json.hpp"

#include "upml/csv.hpp"

namespace upml {

void write_manifest(const std::string& path, const RunManifest& m) {
  nlohmann::json j;
  j["tool_version"] = m.tool_version;
  j["command"] = m.command;
  j["config_digest"] = m.config_digest;
  j["seed"] = m.seed;
  j["rng"] = m.rng;
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["outputs"] = m.outputs;
  write_text_file(path, j.dump(2) + "\n");
}

std::string utc_timestamp_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace upml
