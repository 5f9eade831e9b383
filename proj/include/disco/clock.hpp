#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>

namespace disco {

// Logical time: milliseconds since an arbitrary epoch. Everything that does
// TTL arithmetic reads time through a Clock so tests can drive it explicitly.
using Millis = std::chrono::milliseconds;

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Millis now() const = 0;
};

class SystemClock final : public Clock {
 public:
  Millis now() const override {
    return std::chrono::duration_cast<Millis>(
        std::chrono::system_clock::now().time_since_epoch());
  }
};

// Manually advanced clock, monotone non-decreasing.
class LogicalClock final : public Clock {
 public:
  explicit LogicalClock(Millis start = Millis{0}) : now_ms_(start.count()) {}

  Millis now() const override { return Millis{now_ms_.load()}; }

  void advance(Millis d) { now_ms_ += std::max<int64_t>(0, d.count()); }

  void set(Millis t) {
    int64_t cur = now_ms_.load();
    while (t.count() > cur && !now_ms_.compare_exchange_weak(cur, t.count())) {
    }
  }

 private:
  std::atomic<int64_t> now_ms_;
};

}  // namespace disco
