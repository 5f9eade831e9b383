#include "disco/cache.hpp"

#include <algorithm>
#include <istream>
#include <mutex>
#include <ostream>

#include <json.hpp>

namespace disco {

namespace {

std::vector<std::string> name_tokens(const ServiceRef& ref) {
  std::vector<std::string> tokens = matcher::tokenize(ref.service_name);
  for (std::string& t : matcher::tokenize(ref.business_name)) tokens.push_back(std::move(t));
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

// Category constraints a cached candidate must satisfy before scoring.
bool category_allowed(const std::string& category, const matcher::ConstraintSet& cs) {
  for (const auto& c : cs) {
    if (c.attribute != matcher::Attribute::category) continue;
    ScoredCandidate probe;
    probe.category = category;
    if (!matcher::satisfies(probe, c)) return false;
  }
  return true;
}

}  // namespace

void ServiceCache::erase_posting_locked(const std::string& token, const Posting& posting) {
  auto it = postings_.find(token);
  if (it == postings_.end()) return;
  it->second.erase(posting);
  if (it->second.empty()) postings_.erase(it);
}

void ServiceCache::remove_entry_locked(const std::string& service_key) {
  auto cat_it = key_category_.find(service_key);
  if (cat_it == key_category_.end()) return;
  const std::string category = cat_it->second;
  Posting posting{category, service_key};
  if (auto tok_it = key_tokens_.find(service_key); tok_it != key_tokens_.end()) {
    for (const std::string& t : tok_it->second) erase_posting_locked(t, posting);
    key_tokens_.erase(tok_it);
  }
  if (auto repo_it = repos_.find(category); repo_it != repos_.end()) {
    repo_it->second.entries.erase(service_key);
    if (repo_it->second.entries.empty()) repos_.erase(repo_it);
  }
  key_category_.erase(cat_it);
}

void ServiceCache::put(const ServiceRef& ref, const std::string& category, Millis now,
                       Millis ttl, const std::vector<std::string>& extra_tokens) {
  if (ttl <= Millis{0}) throw ValidationError("cache ttl must be positive");
  if (ref.service_key.empty()) throw ValidationError("cache entry needs a service key");
  const std::string cat = category.empty() ? "uncategorized" : category;

  std::unique_lock lock(mu_);
  remove_entry_locked(ref.service_key);

  CacheEntry entry;
  entry.ref = ref;
  entry.category = cat;
  entry.stored_at = now;
  entry.ttl = ttl;

  auto& repo = repos_[cat];
  repo.category = cat;
  repo.entries[ref.service_key] = std::move(entry);
  key_category_[ref.service_key] = cat;

  std::vector<std::string> tokens = name_tokens(ref);
  for (const std::string& t : extra_tokens) {
    if (!t.empty() && std::find(tokens.begin(), tokens.end(), t) == tokens.end())
      tokens.push_back(t);
  }
  Posting posting{cat, ref.service_key};
  for (const std::string& t : tokens) postings_[t].insert(posting);
  key_tokens_[ref.service_key] = std::move(tokens);

  puts_.fetch_add(1);
}

ServiceCache::LookupResult ServiceCache::lookup(const matcher::CanonicalQuery& q,
                                                Millis now) const {
  std::shared_lock lock(mu_);
  lookups_.fetch_add(1);

  std::set<Posting> candidates;
  for (const std::string& token : q.expanded_tokens) {
    auto it = postings_.find(token);
    if (it == postings_.end()) continue;
    for (const Posting& p : it->second) {
      if (category_allowed(p.first, q.constraints)) candidates.insert(p);
    }
  }

  LookupResult result;
  for (const auto& [category, key] : candidates) {
    auto repo_it = repos_.find(category);
    if (repo_it == repos_.end()) continue;
    auto entry_it = repo_it->second.entries.find(key);
    if (entry_it == repo_it->second.entries.end()) continue;
    const CacheEntry& entry = entry_it->second;
    if (entry.stale(now)) {
      result.had_stale = true;
    } else {
      result.fresh.push_back(entry);
    }
  }
  std::sort(result.fresh.begin(), result.fresh.end(),
            [](const CacheEntry& a, const CacheEntry& b) {
              return std::tie(a.ref.service_name, a.ref.service_key) <
                     std::tie(b.ref.service_name, b.ref.service_key);
            });
  (result.fresh.empty() ? misses_ : hits_).fetch_add(1);
  return result;
}

size_t ServiceCache::evict_expired(Millis now) {
  std::unique_lock lock(mu_);
  std::vector<std::string> doomed;
  for (const auto& [cat, repo] : repos_)
    for (const auto& [key, entry] : repo.entries)
      if (entry.stale(now)) doomed.push_back(key);
  for (const std::string& key : doomed) remove_entry_locked(key);
  evictions_.fetch_add(doomed.size());
  return doomed.size();
}

CacheStats ServiceCache::stats(Millis now) const {
  std::shared_lock lock(mu_);
  CacheStats s;
  for (const auto& [cat, repo] : repos_) {
    s.per_category[cat] = repo.entries.size();
    s.total += repo.entries.size();
    for (const auto& [key, entry] : repo.entries)
      (entry.stale(now) ? s.stale : s.fresh) += 1;
  }
  s.lookups = lookups_.load();
  s.hits = hits_.load();
  s.misses = misses_.load();
  s.puts = puts_.load();
  s.evictions = evictions_.load();
  return s;
}

size_t ServiceCache::size() const {
  std::shared_lock lock(mu_);
  size_t n = 0;
  for (const auto& [cat, repo] : repos_) n += repo.entries.size();
  return n;
}

void ServiceCache::export_snapshot(std::ostream& out) const {
  std::shared_lock lock(mu_);
  for (const auto& [cat, repo] : repos_) {
    for (const auto& [key, e] : repo.entries) {
      nlohmann::json j{{"category", e.category},
                       {"service_key", e.ref.service_key},
                       {"business_key", e.ref.business_key},
                       {"service_name", e.ref.service_name},
                       {"business_name", e.ref.business_name},
                       {"endpoint", e.ref.endpoint},
                       {"stored_at_ms", e.stored_at.count()},
                       {"ttl_ms", e.ttl.count()}};
      out << j.dump() << '\n';
    }
  }
}

size_t ServiceCache::import_snapshot(std::istream& in) {
  size_t count = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    ServiceRef ref;
    ref.service_key = j.at("service_key").get<std::string>();
    ref.business_key = j.at("business_key").get<std::string>();
    ref.service_name = j.at("service_name").get<std::string>();
    ref.business_name = j.at("business_name").get<std::string>();
    ref.endpoint = j.at("endpoint").get<std::string>();
    put(ref, j.at("category").get<std::string>(), Millis{j.at("stored_at_ms").get<int64_t>()},
        Millis{j.at("ttl_ms").get<int64_t>()});
    ++count;
  }
  return count;
}

std::vector<CacheEntry> ServiceCache::all_entries() const {
  std::shared_lock lock(mu_);
  std::vector<CacheEntry> out;
  for (const auto& [cat, repo] : repos_)
    for (const auto& [key, entry] : repo.entries) out.push_back(entry);
  return out;
}

std::vector<std::pair<std::string, std::vector<ServiceCache::Posting>>>
ServiceCache::index_postings() const {
  std::shared_lock lock(mu_);
  std::vector<std::pair<std::string, std::vector<Posting>>> out;
  out.reserve(postings_.size());
  for (const auto& [token, set] : postings_)
    out.emplace_back(token, std::vector<Posting>(set.begin(), set.end()));
  return out;
}

}  // namespace disco
