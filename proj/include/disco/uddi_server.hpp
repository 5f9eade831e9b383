#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "disco/registry.hpp"
#include "disco/uddi.hpp"

namespace disco::uddi {

// One request in, one response out. Every input gets a response document:
// valid requests produce their result, anything else produces a
// dispositionReport. Never throws.
std::string handle_request(RegistryStore& store, std::string_view body);

// HTTP binding: POST /uddi, content type text/xml. Handles requests
// concurrently; one request's failure never affects another.
class RegistryServer {
 public:
  explicit RegistryServer(RegistryStore& store);
  ~RegistryServer();

  RegistryServer(const RegistryServer&) = delete;
  RegistryServer& operator=(const RegistryServer&) = delete;

  // Binds 127.0.0.1 (an ephemeral port when port == 0), starts serving, and
  // returns the bound port.
  int start(int port = 0);
  void stop();

  int port() const;
  std::string endpoint() const;  // "http://127.0.0.1:<port>"

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace disco::uddi
