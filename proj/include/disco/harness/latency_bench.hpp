#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "disco/clock.hpp"

namespace disco::harness {

// Latency bench: spins up a local cluster of delay-injected registries,
// seeds a synthetic corpus per size, and measures discovery time per mode.
//   serial     one registry at a time, cold cache every run
//   concurrent fan-out to all registries, cold cache every run
//   cached     one warm-up discovery, then cache hits
struct LatencyBenchConfig {
  std::vector<size_t> sizes{10, 100, 1000};
  std::vector<std::string> modes{"serial", "concurrent", "cached"};
  int registries = 4;
  Millis delay{100};
  size_t runs = 20;
};

struct LatencyCell {
  size_t size = 0;
  std::string mode;
  double median_ms = 0.0;
  double p95_ms = 0.0;
};

struct LatencyReport {
  std::vector<LatencyCell> cells;

  const LatencyCell* find(size_t size, const std::string& mode) const;
};

LatencyReport bench_latency(const LatencyBenchConfig& cfg);

// CSV columns: size,mode,median_ms,p95_ms.
void write_latency_csv(const LatencyReport& report, std::ostream& out);

}  // namespace disco::harness
