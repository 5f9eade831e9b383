#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "disco/bench.hpp"
#include "disco/registry.hpp"

namespace disco::harness {

// The canonical demo corpus used by the golden wire fixtures: one business
// ("Microsoft DRMS Dev") with three services, all with pinned keys.
struct DemoCorpus {
  static const std::string kBusinessKey;
  static const std::string kCertificationKey;
  static const std::string kMachineActivationKey;
  static const std::string kServerEnrollmentKey;
  static const std::string kOperator;  // "ms.com"
};

void seed_demo_corpus(RegistryStore& store);

// Deterministic UUID-v4-shaped keys for fixtures: stable across runs.
std::string fixture_key(uint32_t group, uint32_t index);

// Synthetic corpus for latency benches: `count` services under one holder
// business, with a known token ("periwinkle") planted in a small fixed
// number of service names so queries return a bounded result set.
struct BenchCorpus {
  static constexpr const char* kQueryToken = "periwinkle";
  static constexpr size_t kMatchingServices = 5;
};

void seed_bench_corpus(RegistryStore& store, size_t count, uint32_t key_group);

// Labeled precision fixtures. Both return the corpus labels and seed the
// store; every name is generated so that non-relevant services score below
// the match threshold for every query (verified by the tests' oracle).
struct PrecisionFixture {
  std::vector<bench::LabeledQuery> labels;
  std::vector<std::string> all_names;
};

// `service_count` services with mutually dissimilar names; `query_count`
// queries, each the exact name of one service, relevant set = that service.
PrecisionFixture seed_exact_match_fixture(RegistryStore& store, size_t service_count,
                                          size_t query_count, uint32_t key_group);

// Services come in same-name pairs with distinct keys; each query targets a
// pair but only one key is labeled relevant, forcing precision 0.5.
PrecisionFixture seed_inseparable_distractor_fixture(RegistryStore& store,
                                                     size_t service_count,
                                                     size_t query_count,
                                                     uint32_t key_group);

}  // namespace disco::harness
