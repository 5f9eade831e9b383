#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "disco/agent.hpp"
#include "disco/cache.hpp"
#include "disco/clock.hpp"
#include "disco/config.hpp"
#include "disco/matcher.hpp"
#include "disco/types.hpp"

namespace disco {

struct DiscoverOptions {
  agent::FanMode mode = agent::FanMode::concurrent;
  bool bypass_cache = false;  // skip the cache read; write-back still happens
};

struct DiscoveryResult {
  std::vector<ScoredCandidate> candidates;  // ranked
  matcher::MetricsReport metrics;
  // Filled when the web path was taken.
  std::vector<std::pair<std::string, agent::RegistryStatus>> per_registry;
  bool from_cache = false;
};

struct PublishResult {
  std::string business_key;
  std::vector<std::string> service_keys;
};

struct PublishedService {
  std::string name;
  std::string category{"uncategorized"};
};

// Orchestrates one discovery pipeline: normalize, expand synonyms, cache
// lookup, concurrent fan-out on miss, score, constraint-filter, rank, cache
// write-back, render. Safe for concurrent discover calls.
class Engine {
 public:
  Engine(EngineConfig config, const Clock& clock);

  DiscoveryResult discover(std::string_view raw_query, DiscoverOptions opts = {});

  // Creates the business and its services on one registry via the publisher
  // wire messages. Throws on transport or validation failure.
  PublishResult publish(const std::string& registry_endpoint,
                        const std::string& business_name,
                        const std::vector<PublishedService>& services);

  ServiceCache& cache() { return cache_; }
  const ServiceCache& cache() const { return cache_; }
  const EngineConfig& config() const { return config_; }
  const matcher::SynonymTable& synonyms() const { return synonyms_; }
  const Clock& clock() const { return clock_; }

  uint64_t fan_out_count() const { return fan_outs_.load(); }

  // Cache snapshot round trip via the configured path (no-ops without one).
  void load_cache_snapshot();
  void save_cache_snapshot() const;

 private:
  std::vector<ScoredCandidate> pipeline(const matcher::CanonicalQuery& q,
                                        std::vector<ScoredCandidate> candidates) const;

  EngineConfig config_;
  const Clock& clock_;
  matcher::SynonymTable synonyms_;
  ServiceCache cache_;
  std::atomic<uint64_t> fan_outs_{0};
};

}  // namespace disco
