#pragma once

#include <string>
#include <vector>

#include "disco/clock.hpp"
#include "disco/errors.hpp"
#include "disco/matcher.hpp"
#include "disco/types.hpp"
#include "disco/uddi_client.hpp"

namespace disco::agent {

struct AgentConfig {
  std::vector<std::string> registries;  // ordered endpoint addresses
  Millis per_registry_deadline{2000};
  Millis overall_deadline{5000};

  void validate() const;  // at least one registry, per <= overall
};

// Registry list file: one endpoint per line, `#` comments.
std::vector<std::string> load_registry_list(const std::string& path);

enum class FanMode { concurrent, serial };

enum class StatusKind { ok, timeout, transport_error, protocol_error };

std::string_view status_kind_name(StatusKind k);

struct RegistryStatus {
  StatusKind kind = StatusKind::ok;
  size_t count = 0;  // services contributed, meaningful when kind == ok
  std::string detail;
};

struct RemoteService {
  ServiceRef ref;  // endpoint stamped with the source registry
  std::string category{"uncategorized"};

  friend bool operator==(const RemoteService&, const RemoteService&) = default;
};

struct FanOutResult {
  std::vector<RemoteService> merged;
  std::vector<std::pair<std::string, RegistryStatus>> per_registry;  // config order
  Millis elapsed{0};

  size_t ok_count() const;
};

struct AllRegistriesFailed : Error {
  explicit AllRegistriesFailed(std::vector<std::pair<std::string, RegistryStatus>> statuses);
  std::vector<std::pair<std::string, RegistryStatus>> statuses;
};

// One batch of results as returned by a single registry, in its local order.
struct RegistryBatch {
  std::string endpoint;
  std::vector<RemoteService> services;
};

// Concatenates batches in the given order, dropping duplicate
// (service_key, endpoint) pairs but keeping the same key from different
// endpoints (they are distinct sources).
std::vector<RemoteService> merge(const std::vector<RegistryBatch>& batches);

// Queries every configured registry concurrently (each registry's inquiry
// calls also run in parallel) and merges whatever arrived by the overall
// deadline. Registries that failed are reported in per_registry; if all
// failed, throws AllRegistriesFailed.
FanOutResult fan_out(const AgentConfig& cfg, const matcher::CanonicalQuery& q);

// Same contract, but registries are queried one at a time in config order.
// Exists as the single-threaded baseline for latency comparisons.
FanOutResult serial_fan_out(const AgentConfig& cfg, const matcher::CanonicalQuery& q);

}  // namespace disco::agent
