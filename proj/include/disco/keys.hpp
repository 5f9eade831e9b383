#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace disco {

// Generates UUID-v4-format key strings. Seedable so fixtures can be
// reproduced run to run; default-constructed instances seed from the OS.
class KeyGenerator {
 public:
  explicit KeyGenerator(std::optional<uint64_t> seed = std::nullopt);

  std::string next();

  static bool looks_like_key(const std::string& s);

 private:
  std::mt19937_64 rng_;
};

}  // namespace disco
