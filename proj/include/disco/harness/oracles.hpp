#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "disco/cache.hpp"
#include "disco/matcher.hpp"
#include "disco/types.hpp"

// Independent brute-force re-implementations used as ground truth. These
// deliberately share no logic with the production modules they check.
namespace disco::harness {

// Classic full-table Levenshtein DP.
size_t oracle_edit_distance(std::string_view a, std::string_view b);

// Linear scan over every cache entry: an entry matches when any expanded
// query token equals any of the tokens it was indexed under, its category
// passes the query's category constraints, and it is fresh at `now`.
std::vector<CacheEntry> oracle_lookup(const ServiceCache& cache,
                                      const matcher::CanonicalQuery& q, Millis now);

// Direct predicate evaluation per candidate.
std::vector<ScoredCandidate> oracle_filter(const std::vector<ScoredCandidate>& candidates,
                                           const matcher::ConstraintSet& constraints);

// Set-intersection precision count.
double oracle_precision(const std::vector<ScoredCandidate>& result,
                        const std::set<std::string>& relevant_keys);

// Independent lowercase/alnum-split tokenizer for audits.
std::vector<std::string> oracle_tokenize(std::string_view text);

struct AuditFailure {
  std::string what;
};

// Walks index and store: every posting must resolve to a live entry of the
// same category, and every entry must be reachable from each token of its
// names. Returns all violations (empty means the audit passed).
std::vector<AuditFailure> audit_cache(const ServiceCache& cache);

}  // namespace disco::harness
