#include "disco/agent.hpp"

#include <algorithm>
#include <cctype>
#include <condition_variable>
#include <fstream>
#include <future>
#include <memory>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

namespace disco::agent {

namespace {

using SteadyClock = std::chrono::steady_clock;

std::string fold(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// The raw query text plus every expanded token, deduplicated
// case-insensitively. Each becomes one find_service and one find_business
// inquiry; broker-side scoring re-ranks whatever comes back.
std::vector<std::string> wire_queries(const matcher::CanonicalQuery& q) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  auto push = [&](const std::string& s) {
    if (s.empty()) return;
    if (seen.insert(fold(s)).second) out.push_back(s);
  };
  push(q.name_text);
  for (const std::string& t : q.expanded_tokens) push(t);
  return out;
}

// A single equals-constraint on category is pushed down to find_service;
// everything else is filtered broker-side.
std::optional<std::string> category_pushdown(const matcher::CanonicalQuery& q) {
  std::optional<std::string> category;
  for (const auto& c : q.constraints) {
    if (c.attribute != matcher::Attribute::category) continue;
    if (c.op != matcher::ConstraintOp::equals) return std::nullopt;
    if (category && *category != c.value) return std::nullopt;
    category = c.value;
  }
  return category;
}

StatusKind to_status(uddi::CallError e) {
  switch (e) {
    case uddi::CallError::timeout: return StatusKind::timeout;
    case uddi::CallError::protocol: return StatusKind::protocol_error;
    default: return StatusKind::transport_error;
  }
}

RemoteService from_record(const uddi::ServiceRecord& r, const std::string& endpoint) {
  RemoteService s;
  s.ref.service_key = r.service_key;
  s.ref.business_key = r.business_key;
  s.ref.service_name = r.name;
  s.ref.business_name = r.business_name;
  s.ref.endpoint = endpoint;
  s.category = r.category;
  return s;
}

struct TaskOutcome {
  StatusKind kind = StatusKind::ok;
  std::string detail;
  std::vector<RemoteService> services;  // registry-local order, deduped by key
};

// Runs every inquiry for one registry concurrently and gathers the results:
// find_service hits first (they carry category and business name), then the
// services of find_business hits. Any failed call fails the registry.
TaskOutcome query_registry(const std::string& endpoint,
                           const std::vector<std::string>& queries,
                           const std::optional<std::string>& category, Millis budget) {
  std::vector<std::future<uddi::CallResult<uddi::ServiceListResponse>>> service_calls;
  std::vector<std::future<uddi::CallResult<uddi::BusinessListResponse>>> business_calls;
  service_calls.reserve(queries.size());
  business_calls.reserve(queries.size());
  for (const std::string& query : queries) {
    service_calls.push_back(std::async(std::launch::async, [=] {
      uddi::FindServiceRequest req;
      req.name = query;
      req.category = category;
      return uddi::remote_find_service(endpoint, req, budget);
    }));
    business_calls.push_back(std::async(std::launch::async, [=] {
      uddi::FindBusinessRequest req;
      req.name = query;
      return uddi::remote_find_business(endpoint, req, budget);
    }));
  }

  TaskOutcome out;
  std::vector<RemoteService> collected;
  try {
    for (auto& f : service_calls) {
      auto r = f.get();
      if (!r.ok()) {
        if (out.kind == StatusKind::ok) out = {to_status(r.error), r.detail, {}};
        continue;
      }
      for (const auto& rec : r.value->services) collected.push_back(from_record(rec, endpoint));
    }
    for (auto& f : business_calls) {
      auto r = f.get();
      if (!r.ok()) {
        if (out.kind == StatusKind::ok) out = {to_status(r.error), r.detail, {}};
        continue;
      }
      for (const auto& biz : r.value->businesses) {
        for (const auto& si : biz.services) {
          RemoteService s;
          s.ref.service_key = si.service_key;
          s.ref.business_key = si.business_key;
          s.ref.service_name = si.name;
          s.ref.business_name = biz.name;
          s.ref.endpoint = endpoint;
          collected.push_back(std::move(s));
        }
      }
    }
  } catch (const std::exception& e) {
    return {StatusKind::protocol_error, e.what(), {}};
  }
  if (out.kind != StatusKind::ok) return out;

  std::unordered_set<std::string> seen;
  for (auto& s : collected)
    if (seen.insert(s.ref.service_key).second) out.services.push_back(std::move(s));
  return out;
}

FanOutResult assemble(const AgentConfig& cfg, const std::vector<TaskOutcome>& outcomes,
                      Millis elapsed) {
  FanOutResult result;
  result.elapsed = elapsed;
  std::vector<RegistryBatch> batches;
  for (size_t i = 0; i < cfg.registries.size(); ++i) {
    const TaskOutcome& t = outcomes[i];
    RegistryStatus status{t.kind, t.services.size(), t.detail};
    result.per_registry.emplace_back(cfg.registries[i], status);
    if (t.kind == StatusKind::ok)
      batches.push_back(RegistryBatch{cfg.registries[i], t.services});
  }
  if (batches.empty()) throw AllRegistriesFailed(result.per_registry);
  result.merged = merge(batches);
  return result;
}

}  // namespace

void AgentConfig::validate() const {
  if (registries.empty()) throw ValidationError("agent needs at least one registry");
  if (per_registry_deadline <= Millis{0} || overall_deadline <= Millis{0})
    throw ValidationError("agent deadlines must be positive");
  if (per_registry_deadline > overall_deadline)
    throw ValidationError("per-registry deadline exceeds the overall deadline");
  std::set<std::string> unique(registries.begin(), registries.end());
  if (unique.size() != registries.size())
    throw ValidationError("registry list contains duplicate endpoints");
}

std::vector<std::string> load_registry_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open registry list file: " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    std::string trimmed = line.substr(b, e - b + 1);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    out.push_back(std::move(trimmed));
  }
  return out;
}

std::string_view status_kind_name(StatusKind k) {
  switch (k) {
    case StatusKind::ok: return "ok";
    case StatusKind::timeout: return "timeout";
    case StatusKind::transport_error: return "transport_error";
    case StatusKind::protocol_error: break;
  }
  return "protocol_error";
}

size_t FanOutResult::ok_count() const {
  size_t n = 0;
  for (const auto& [ep, status] : per_registry)
    if (status.kind == StatusKind::ok) ++n;
  return n;
}

AllRegistriesFailed::AllRegistriesFailed(
    std::vector<std::pair<std::string, RegistryStatus>> s)
    : Error("all registries failed"), statuses(std::move(s)) {}

std::vector<RemoteService> merge(const std::vector<RegistryBatch>& batches) {
  std::vector<RemoteService> out;
  std::set<std::pair<std::string, std::string>> seen;  // (service_key, endpoint)
  for (const RegistryBatch& batch : batches) {
    for (const RemoteService& s : batch.services) {
      if (seen.insert({s.ref.service_key, batch.endpoint}).second) out.push_back(s);
    }
  }
  return out;
}

FanOutResult fan_out(const AgentConfig& cfg, const matcher::CanonicalQuery& q) {
  cfg.validate();
  const std::vector<std::string> queries = wire_queries(q);
  const std::optional<std::string> category = category_pushdown(q);
  const size_t n = cfg.registries.size();
  const auto start = SteadyClock::now();

  struct Slot {
    bool done = false;
    TaskOutcome outcome;
  };
  struct Shared {
    std::mutex m;
    std::condition_variable cv;
    size_t completed = 0;
    std::vector<Slot> slots;
  };
  auto shared = std::make_shared<Shared>();
  shared->slots.resize(n);

  for (size_t i = 0; i < n; ++i) {
    std::string endpoint = cfg.registries[i];
    Millis budget = cfg.per_registry_deadline;
    std::thread([shared, i, endpoint, queries, category, budget] {
      TaskOutcome outcome = query_registry(endpoint, queries, category, budget);
      std::lock_guard lock(shared->m);
      if (!shared->slots[i].done) {
        shared->slots[i].outcome = std::move(outcome);
        shared->slots[i].done = true;
        ++shared->completed;
        shared->cv.notify_all();
      }
    }).detach();
  }

  std::vector<TaskOutcome> outcomes(n);
  {
    std::unique_lock lock(shared->m);
    shared->cv.wait_until(lock, start + cfg.overall_deadline,
                          [&] { return shared->completed == n; });
    for (size_t i = 0; i < n; ++i) {
      if (!shared->slots[i].done) {
        // A laggard thread finding done=true drops its result.
        shared->slots[i].done = true;
        shared->slots[i].outcome = {StatusKind::timeout, "overall deadline exceeded", {}};
      }
      outcomes[i] = std::move(shared->slots[i].outcome);
    }
  }

  auto elapsed = std::chrono::duration_cast<Millis>(SteadyClock::now() - start);
  return assemble(cfg, outcomes, elapsed);
}

FanOutResult serial_fan_out(const AgentConfig& cfg, const matcher::CanonicalQuery& q) {
  cfg.validate();
  const std::vector<std::string> queries = wire_queries(q);
  const std::optional<std::string> category = category_pushdown(q);
  const auto start = SteadyClock::now();

  std::vector<TaskOutcome> outcomes(cfg.registries.size());
  for (size_t i = 0; i < cfg.registries.size(); ++i) {
    auto spent = std::chrono::duration_cast<Millis>(SteadyClock::now() - start);
    Millis remaining = cfg.overall_deadline - spent;
    if (remaining <= Millis{0}) {
      outcomes[i] = {StatusKind::timeout, "overall deadline exceeded", {}};
      continue;
    }
    Millis budget = std::min(cfg.per_registry_deadline, remaining);
    outcomes[i] = query_registry(cfg.registries[i], queries, category, budget);
  }

  auto elapsed = std::chrono::duration_cast<Millis>(SteadyClock::now() - start);
  return assemble(cfg, outcomes, elapsed);
}

}  // namespace disco::agent
