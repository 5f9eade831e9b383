#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>

#include "disco/clock.hpp"
#include "disco/registry.hpp"

namespace disco::harness {

enum class FailureMode {
  none,     // serve normally after the injected delay
  refuse,   // no listener: connections are refused
  timeout,  // hold the request longer than any client deadline, then answer
  garbage,  // answer immediately with bytes that are not XML
};

// A real HTTP registry with injected latency and failure behavior, plus a
// request counter. With FailureMode::none and zero delay it is
// observationally equivalent to the production server.
class FakeRegistry {
 public:
  explicit FakeRegistry(std::string operator_id = "fake.registry",
                        std::optional<uint64_t> key_seed = std::nullopt);
  ~FakeRegistry();

  FakeRegistry(const FakeRegistry&) = delete;
  FakeRegistry& operator=(const FakeRegistry&) = delete;

  void set_delay(Millis delay);
  void set_failure_mode(FailureMode mode);
  // How long a timeout-mode handler holds the request before answering.
  void set_timeout_hold(Millis hold);

  // Starts listening (except in refuse mode, where the port is allocated
  // and then left closed). Returns the endpoint either way.
  std::string start();
  void stop();

  std::string endpoint() const;
  RegistryStore& store();
  uint64_t calls() const;  // increments exactly once per received request
  void reset_calls();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace disco::harness
