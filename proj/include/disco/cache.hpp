#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "disco/clock.hpp"
#include "disco/matcher.hpp"
#include "disco/types.hpp"

namespace disco {

struct CacheEntry {
  ServiceRef ref;
  std::string category{"uncategorized"};
  Millis stored_at{0};
  Millis ttl{0};  // > 0

  bool stale(Millis now) const { return now - stored_at > ttl; }

  friend bool operator==(const CacheEntry&, const CacheEntry&) = default;
};

struct CategoryRepository {
  std::string category;
  std::map<std::string, CacheEntry> entries;  // service_key -> entry
};

struct CacheStats {
  std::map<std::string, size_t> per_category;
  size_t total = 0;
  size_t fresh = 0;
  size_t stale = 0;
  uint64_t lookups = 0;
  uint64_t hits = 0;    // lookups that returned at least one fresh entry
  uint64_t misses = 0;  // lookups that returned none
  uint64_t puts = 0;
  uint64_t evictions = 0;
};

// Local cache of discovered service references, partitioned by category,
// fronted by an inverted token index. Entries age out by TTL: a stale entry
// is never returned by lookup (it is flagged instead) and is physically
// removed by evict_expired or by being replaced. Many concurrent readers,
// exclusive writers; time is always passed in, never read ambiently.
class ServiceCache {
 public:
  using Posting = std::pair<std::string, std::string>;  // (category, service_key)

  // Stores the entry, replacing any prior entry with the same service key
  // (also across categories) and resetting stored_at. The entry is indexed
  // under every token of its service and business names plus the caller's
  // extra tokens — the engine passes the query tokens that retrieved it so a
  // repeat of the same query resolves from the cache even when the original
  // match was fuzzy rather than token-exact.
  void put(const ServiceRef& ref, const std::string& category, Millis now, Millis ttl,
           const std::vector<std::string>& extra_tokens = {});

  struct LookupResult {
    std::vector<CacheEntry> fresh;  // (service name, key) ascending
    bool had_stale = false;
  };

  // Union of postings over the query's expanded tokens, restricted to any
  // category constraints. Stale entries are flagged, never returned.
  LookupResult lookup(const matcher::CanonicalQuery& q, Millis now) const;

  size_t evict_expired(Millis now);

  CacheStats stats(Millis now) const;
  size_t size() const;

  // Snapshot: one JSON record per line. Import replays entries through put()
  // (name-token postings only; query associations are not persisted).
  void export_snapshot(std::ostream& out) const;
  size_t import_snapshot(std::istream& in);

  // Read-only introspection for audits.
  std::vector<CacheEntry> all_entries() const;
  std::vector<std::pair<std::string, std::vector<Posting>>> index_postings() const;

 private:
  void remove_entry_locked(const std::string& service_key);
  void erase_posting_locked(const std::string& token, const Posting& posting);

  mutable std::shared_mutex mu_;
  std::map<std::string, CategoryRepository> repos_;
  std::unordered_map<std::string, std::set<Posting>> postings_;
  std::unordered_map<std::string, std::string> key_category_;
  std::unordered_map<std::string, std::vector<std::string>> key_tokens_;

  mutable std::atomic<uint64_t> lookups_{0};
  mutable std::atomic<uint64_t> hits_{0};
  mutable std::atomic<uint64_t> misses_{0};
  std::atomic<uint64_t> puts_{0};
  std::atomic<uint64_t> evictions_{0};
};

}  // namespace disco
