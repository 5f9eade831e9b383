#include "disco/harness/oracles.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace disco::harness {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool ci_contains(std::string_view hay, std::string_view needle) {
  return lower(hay).find(lower(needle)) != std::string::npos;
}

bool ci_equals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && lower(a) == lower(b);
}

bool ci_prefix(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && lower(s.substr(0, prefix.size())) == lower(prefix);
}

bool constraint_holds(const ScoredCandidate& c, const matcher::Constraint& cs) {
  std::string_view field;
  switch (cs.attribute) {
    case matcher::Attribute::business_name: field = c.ref.business_name; break;
    case matcher::Attribute::service_name: field = c.ref.service_name; break;
    case matcher::Attribute::category: field = c.category; break;
  }
  switch (cs.op) {
    case matcher::ConstraintOp::equals: return ci_equals(field, cs.value);
    case matcher::ConstraintOp::contains: return ci_contains(field, cs.value);
    case matcher::ConstraintOp::prefix: return ci_prefix(field, cs.value);
  }
  return false;
}

bool category_passes(const std::string& category, const matcher::ConstraintSet& cs) {
  for (const auto& c : cs) {
    if (c.attribute != matcher::Attribute::category) continue;
    ScoredCandidate probe;
    probe.category = category;
    if (!constraint_holds(probe, c)) return false;
  }
  return true;
}

}  // namespace

size_t oracle_edit_distance(std::string_view a, std::string_view b) {
  const size_t n = a.size(), m = b.size();
  std::vector<std::vector<size_t>> dp(n + 1, std::vector<size_t>(m + 1, 0));
  for (size_t i = 0; i <= n; ++i) dp[i][0] = i;
  for (size_t j = 0; j <= m; ++j) dp[0][j] = j;
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      size_t del = dp[i - 1][j] + 1;
      size_t ins = dp[i][j - 1] + 1;
      size_t sub = dp[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      dp[i][j] = std::min({del, ins, sub});
    }
  }
  return dp[n][m];
}

std::vector<std::string> oracle_tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    } else {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<CacheEntry> oracle_lookup(const ServiceCache& cache,
                                      const matcher::CanonicalQuery& q, Millis now) {
  std::vector<CacheEntry> out;
  for (const CacheEntry& e : cache.all_entries()) {
    if (now - e.stored_at > e.ttl) continue;  // stale
    if (!category_passes(e.category, q.constraints)) continue;
    std::vector<std::string> entry_tokens = oracle_tokenize(e.ref.service_name);
    for (std::string& t : oracle_tokenize(e.ref.business_name))
      entry_tokens.push_back(std::move(t));
    bool matches = false;
    for (const std::string& qt : q.expanded_tokens) {
      if (std::find(entry_tokens.begin(), entry_tokens.end(), qt) != entry_tokens.end()) {
        matches = true;
        break;
      }
    }
    if (matches) out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const CacheEntry& a, const CacheEntry& b) {
    return std::tie(a.ref.service_name, a.ref.service_key) <
           std::tie(b.ref.service_name, b.ref.service_key);
  });
  return out;
}

std::vector<ScoredCandidate> oracle_filter(const std::vector<ScoredCandidate>& candidates,
                                           const matcher::ConstraintSet& constraints) {
  std::vector<ScoredCandidate> out;
  for (const ScoredCandidate& c : candidates) {
    bool keep = true;
    for (const auto& cs : constraints) {
      if (!constraint_holds(c, cs)) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(c);
  }
  return out;
}

double oracle_precision(const std::vector<ScoredCandidate>& result,
                        const std::set<std::string>& relevant_keys) {
  if (result.empty()) return 0.0;
  size_t hits = 0;
  for (const auto& c : result)
    if (relevant_keys.count(c.ref.service_key) != 0) ++hits;
  return static_cast<double>(hits) / static_cast<double>(result.size());
}

std::vector<AuditFailure> audit_cache(const ServiceCache& cache) {
  std::vector<AuditFailure> failures;
  auto entries = cache.all_entries();
  auto postings = cache.index_postings();

  std::map<std::pair<std::string, std::string>, const CacheEntry*> by_posting;
  for (const CacheEntry& e : entries) by_posting[{e.category, e.ref.service_key}] = &e;

  // Every posting resolves to a live entry in the same category.
  for (const auto& [token, plist] : postings) {
    for (const auto& p : plist) {
      if (by_posting.find(p) == by_posting.end())
        failures.push_back({"posting '" + token + "' -> (" + p.first + ", " + p.second +
                            ") resolves to no live entry"});
    }
  }

  // Every entry is reachable from each of its name tokens.
  std::map<std::string, std::set<std::pair<std::string, std::string>>> index;
  for (const auto& [token, plist] : postings)
    index[token] = {plist.begin(), plist.end()};
  for (const CacheEntry& e : entries) {
    std::vector<std::string> tokens = oracle_tokenize(e.ref.service_name);
    for (std::string& t : oracle_tokenize(e.ref.business_name)) tokens.push_back(std::move(t));
    for (const std::string& t : tokens) {
      auto it = index.find(t);
      if (it == index.end() || it->second.count({e.category, e.ref.service_key}) == 0)
        failures.push_back({"entry " + e.ref.service_key + " unreachable from token '" +
                            t + "'"});
    }
  }
  return failures;
}

}  // namespace disco::harness
