#pragma once

#include <map>
#include <optional>
#include <string>

#include "disco/agent.hpp"
#include "disco/clock.hpp"
#include "disco/matcher.hpp"

namespace disco {

// Engine configuration. Resolution order: built-in defaults, then the
// key=value config file, then DISCO_* environment variables, then CLI flags.
struct EngineConfig {
  agent::AgentConfig agent;
  std::string synonyms_path;       // optional
  std::string cache_snapshot_path; // optional; loaded at startup, saved by the CLI
  Millis ttl{300000};              // 300 s default
  double match_threshold = 0.5;
  matcher::OutputFormat format = matcher::OutputFormat::table;

  // Keys: registries (comma-separated), registries_file, synonyms_file,
  // cache_snapshot, ttl_ms, match_threshold, per_registry_deadline_ms,
  // overall_deadline_ms, format.
  void apply(const std::map<std::string, std::string>& kv);
  void apply_file(const std::string& path);
  void apply_env();  // DISCO_<UPPERCASED KEY>

  // Checks ranges and that referenced files are readable. Registry list may
  // be empty (publish and cache commands do not need one).
  void validate() const;
};

// Parses `key=value` lines; `#` starts a comment, blank lines are skipped.
std::map<std::string, std::string> parse_config_text(const std::string& text);

}  // namespace disco
