#pragma once

#include <string>

namespace disco {

// A reference to a discovered service: enough to identify it, score it
// against a query, and tell the user where it came from.
struct ServiceRef {
  std::string service_key;
  std::string business_key;
  std::string service_name;
  std::string business_name;
  std::string endpoint;  // source registry, empty for locally seeded refs

  friend bool operator==(const ServiceRef&, const ServiceRef&) = default;
};

enum class Origin { cache, web };

inline const char* origin_name(Origin o) {
  return o == Origin::cache ? "cache" : "web";
}

struct ScoredCandidate {
  ServiceRef ref;
  std::string category;
  double score = 0.0;
  Origin origin = Origin::web;

  friend bool operator==(const ScoredCandidate&, const ScoredCandidate&) = default;
};

}  // namespace disco
