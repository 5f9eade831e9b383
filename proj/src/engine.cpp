#include "disco/engine.hpp"

#include <chrono>
#include <fstream>

#include "disco/uddi_client.hpp"

namespace disco {

namespace {

using SteadyClock = std::chrono::steady_clock;

ScoredCandidate from_cache_entry(const CacheEntry& e) {
  ScoredCandidate c;
  c.ref = e.ref;
  c.category = e.category;
  c.origin = Origin::cache;
  return c;
}

ScoredCandidate from_remote(const agent::RemoteService& s) {
  ScoredCandidate c;
  c.ref = s.ref;
  c.category = s.category;
  c.origin = Origin::web;
  return c;
}

}  // namespace

Engine::Engine(EngineConfig config, const Clock& clock)
    : config_(std::move(config)), clock_(clock) {
  config_.validate();
  if (!config_.synonyms_path.empty())
    synonyms_ = matcher::SynonymTable::load_file(config_.synonyms_path);
  load_cache_snapshot();
}

// Score against the query, drop candidates below the match threshold, apply
// the constraint set, rank.
std::vector<ScoredCandidate> Engine::pipeline(const matcher::CanonicalQuery& q,
                                              std::vector<ScoredCandidate> candidates) const {
  std::vector<ScoredCandidate> kept;
  kept.reserve(candidates.size());
  for (ScoredCandidate& c : candidates) {
    c.score = matcher::score_candidate(q, c.ref);
    if (c.score >= config_.match_threshold) kept.push_back(std::move(c));
  }
  kept = matcher::csp_filter(std::move(kept), q.constraints);
  return matcher::rank(std::move(kept));
}

DiscoveryResult Engine::discover(std::string_view raw_query, DiscoverOptions opts) {
  const auto t0 = SteadyClock::now();
  matcher::CanonicalQuery q = matcher::normalize(raw_query);
  q = matcher::expand_synonyms(std::move(q), synonyms_);

  DiscoveryResult result;

  if (!opts.bypass_cache) {
    ServiceCache::LookupResult hit = cache_.lookup(q, clock_.now());
    std::vector<ScoredCandidate> candidates;
    candidates.reserve(hit.fresh.size());
    for (const CacheEntry& e : hit.fresh) candidates.push_back(from_cache_entry(e));
    candidates = pipeline(q, std::move(candidates));
    if (!candidates.empty()) {
      // Fresh survivors answer the query; stale entries (if any) refresh on
      // the next miss.
      result.candidates = std::move(candidates);
      result.from_cache = true;
      result.metrics.retrieved_count = result.candidates.size();
      result.metrics.discovery_time =
          std::chrono::duration_cast<std::chrono::microseconds>(SteadyClock::now() - t0);
      return result;
    }
  }

  fan_outs_.fetch_add(1);
  agent::FanOutResult fanned = opts.mode == agent::FanMode::serial
                                   ? agent::serial_fan_out(config_.agent, q)
                                   : agent::fan_out(config_.agent, q);
  result.per_registry = fanned.per_registry;

  std::vector<ScoredCandidate> candidates;
  candidates.reserve(fanned.merged.size());
  for (const agent::RemoteService& s : fanned.merged) candidates.push_back(from_remote(s));
  candidates = pipeline(q, std::move(candidates));

  const Millis now = clock_.now();
  for (const ScoredCandidate& c : candidates)
    cache_.put(c.ref, c.category, now, config_.ttl, q.expanded_tokens);

  result.candidates = std::move(candidates);
  result.metrics.retrieved_count = result.candidates.size();
  result.metrics.discovery_time =
      std::chrono::duration_cast<std::chrono::microseconds>(SteadyClock::now() - t0);
  return result;
}

PublishResult Engine::publish(const std::string& registry_endpoint,
                              const std::string& business_name,
                              const std::vector<PublishedService>& services) {
  const Millis deadline = config_.agent.per_registry_deadline;

  uddi::SaveBusinessRequest save_biz;
  save_biz.name = business_name;
  auto biz = uddi::remote_save_business(registry_endpoint, save_biz, deadline);
  if (!biz.ok())
    throw Error("save_business failed against " + registry_endpoint + ": " + biz.detail);

  PublishResult out;
  out.business_key = biz.value->business_key;
  for (const PublishedService& svc : services) {
    uddi::SaveServiceRequest req;
    req.business_key = out.business_key;
    req.name = svc.name;
    req.category = svc.category;
    auto r = uddi::remote_save_service(registry_endpoint, req, deadline);
    if (!r.ok())
      throw Error("save_service '" + svc.name + "' failed against " + registry_endpoint +
                  ": " + r.detail);
    out.service_keys.push_back(r.value->service.service_key);
  }
  return out;
}

void Engine::load_cache_snapshot() {
  if (config_.cache_snapshot_path.empty()) return;
  std::ifstream in(config_.cache_snapshot_path);
  if (!in) return;  // nothing saved yet
  cache_.import_snapshot(in);
}

void Engine::save_cache_snapshot() const {
  if (config_.cache_snapshot_path.empty()) return;
  std::ofstream out(config_.cache_snapshot_path, std::ios::trunc);
  if (!out)
    throw ConfigError("cannot write cache snapshot: " + config_.cache_snapshot_path);
  cache_.export_snapshot(out);
}

}  // namespace disco
