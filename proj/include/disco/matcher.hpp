#pragma once

#include <chrono>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "disco/errors.hpp"
#include "disco/types.hpp"

namespace disco::matcher {

enum class Attribute { business_name, service_name, category };
enum class ConstraintOp { equals, contains, prefix };

std::string_view attribute_name(Attribute a);
std::string_view constraint_op_name(ConstraintOp op);

struct Constraint {
  Attribute attribute;
  ConstraintOp op;
  std::string value;  // non-empty

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

using ConstraintSet = std::vector<Constraint>;

// Normalized form of a user query: lowercase tokens from the free-text head,
// plus constraints parsed from trailing "where" clauses.
struct CanonicalQuery {
  std::string raw;        // original user string, verbatim
  std::string name_text;  // free-text head, before any "where" clause
  std::vector<std::string> tokens;           // ordered, lowercase, non-empty
  std::vector<std::string> expanded_tokens;  // tokens plus synonyms
  ConstraintSet constraints;

  bool is_synonym_token(std::string_view t) const;  // in expanded but not tokens
};

// Token groups loaded from a file of comma-separated lines (`#` comments).
// Symmetric: adding a->b also adds b->a.
class SynonymTable {
 public:
  static SynonymTable load_file(const std::string& path);
  static SynonymTable parse(std::istream& in);

  void add_group(const std::vector<std::string>& tokens);
  void add_pair(std::string_view a, std::string_view b);

  const std::set<std::string>* find(const std::string& token) const;
  size_t group_count() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::unordered_map<std::string, std::set<std::string>> entries_;
};

// Lowercases and splits on non-alphanumeric runs (ASCII).
std::vector<std::string> tokenize(std::string_view text);

// Parses a raw query into tokens + constraints. Trailing clauses:
//   where business_name=V   equals
//   where service_name~V    contains
//   where service_name^V    prefix
//   where category=V        equals
// Throws EmptyQueryError when no tokens survive, ValidationError on a
// malformed clause.
CanonicalQuery normalize(std::string_view raw);

// expanded_tokens = tokens ∪ synonyms(tokens). Idempotent: expansion is
// always computed from the original tokens.
CanonicalQuery expand_synonyms(CanonicalQuery q, const SynonymTable& table);

// Normalized Levenshtein similarity on case-folded strings:
// 1 - distance/max(len). Both empty -> 1.
double edit_similarity(std::string_view a, std::string_view b);

// max(substring component, edit component); substring component is 1 when
// either string contains the other case-insensitively (covers prefix, suffix
// and infix), else 0. Symmetric, in [0,1], 1 on identical strings.
double fuzzy_score(std::string_view a, std::string_view b);

// Best fuzzy score of any expanded token against the service and business
// names; tokens that entered the query only via synonym expansion are
// penalized by 0.9 so direct hits outrank synonym hits.
double score_candidate(const CanonicalQuery& q, const ServiceRef& ref);

bool satisfies(const ScoredCandidate& c, const Constraint& constraint);

// Conjunctive filter; keeps input order.
std::vector<ScoredCandidate> csp_filter(std::vector<ScoredCandidate> candidates,
                                        const ConstraintSet& constraints);

// Descending score; ties by service name ascending, then service key
// ascending. Total order, so the output is deterministic.
std::vector<ScoredCandidate> rank(std::vector<ScoredCandidate> candidates);

struct MetricsReport {
  size_t retrieved_count = 0;
  size_t relevant_retrieved_count = 0;
  double precision = 0.0;  // 0 when nothing was retrieved
  std::chrono::microseconds discovery_time{0};
};

MetricsReport precision(const std::vector<ScoredCandidate>& result,
                        const std::set<std::string>& relevant_keys);

enum class OutputFormat { table, records };

std::optional<OutputFormat> parse_output_format(std::string_view s);

// Outbound translation. Table: header plus one aligned row per candidate.
// Records: one JSON object per line. Both render an empty result as the
// literal line "no service found".
std::string render_response(const std::vector<ScoredCandidate>& results,
                            OutputFormat format);

// Inverse of the records format, for scripting round trips.
std::vector<ScoredCandidate> parse_records(std::string_view text);

}  // namespace disco::matcher
