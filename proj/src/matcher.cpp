#include "disco/matcher.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "disco/registry.hpp"  // contains_ci / equals_ci

namespace disco::matcher {

namespace {

std::string fold(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), size_t{0});
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

constexpr double kSynonymPenalty = 0.9;
constexpr std::string_view kWhereSeparator = " where ";
constexpr std::string_view kNoServiceFound = "no service found";

std::optional<Attribute> parse_attribute(std::string_view s) {
  if (s == "business_name") return Attribute::business_name;
  if (s == "service_name") return Attribute::service_name;
  if (s == "category") return Attribute::category;
  return std::nullopt;
}

// A clause is ATTR followed by one of = ~ ^ and a value.
Constraint parse_clause(std::string_view clause) {
  size_t op_pos = clause.find_first_of("=~^");
  if (op_pos == std::string_view::npos)
    throw ValidationError("constraint clause '" + std::string(clause) +
                          "' has no operator (= ~ ^)");
  auto attr = parse_attribute(trim(clause.substr(0, op_pos)));
  if (!attr)
    throw ValidationError("unknown constraint attribute in '" + std::string(clause) + "'");
  ConstraintOp op = clause[op_pos] == '=' ? ConstraintOp::equals
                    : clause[op_pos] == '~' ? ConstraintOp::contains
                                            : ConstraintOp::prefix;
  std::string value{trim(clause.substr(op_pos + 1))};
  if (value.empty())
    throw ValidationError("constraint clause '" + std::string(clause) + "' has an empty value");
  return Constraint{*attr, op, std::move(value)};
}

const std::string& field_of(const ScoredCandidate& c, Attribute attr) {
  switch (attr) {
    case Attribute::business_name: return c.ref.business_name;
    case Attribute::service_name: return c.ref.service_name;
    case Attribute::category: break;
  }
  return c.category;
}

nlohmann::json to_record(const ScoredCandidate& c) {
  return nlohmann::json{{"business_key", c.ref.business_key},
                        {"business_name", c.ref.business_name},
                        {"category", c.category},
                        {"endpoint", c.ref.endpoint},
                        {"origin", origin_name(c.origin)},
                        {"score", c.score},
                        {"service_key", c.ref.service_key},
                        {"service_name", c.ref.service_name}};
}

}  // namespace

std::string_view attribute_name(Attribute a) {
  switch (a) {
    case Attribute::business_name: return "business_name";
    case Attribute::service_name: return "service_name";
    case Attribute::category: break;
  }
  return "category";
}

std::string_view constraint_op_name(ConstraintOp op) {
  switch (op) {
    case ConstraintOp::equals: return "equals";
    case ConstraintOp::contains: return "contains";
    case ConstraintOp::prefix: break;
  }
  return "prefix";
}

bool CanonicalQuery::is_synonym_token(std::string_view t) const {
  return std::find(tokens.begin(), tokens.end(), t) == tokens.end();
}

SynonymTable SynonymTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open synonym table file: " + path);
  return parse(in);
}

SynonymTable SynonymTable::parse(std::istream& in) {
  SynonymTable table;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    std::vector<std::string> group;
    size_t start = 0;
    while (start <= sv.size()) {
      size_t comma = sv.find(',', start);
      if (comma == std::string_view::npos) comma = sv.size();
      std::string_view item = trim(sv.substr(start, comma - start));
      if (!item.empty()) group.push_back(fold(item));
      start = comma + 1;
    }
    if (group.size() >= 2) table.add_group(group);
  }
  return table;
}

void SynonymTable::add_group(const std::vector<std::string>& tokens) {
  for (size_t i = 0; i < tokens.size(); ++i)
    for (size_t j = i + 1; j < tokens.size(); ++j) add_pair(tokens[i], tokens[j]);
}

void SynonymTable::add_pair(std::string_view a, std::string_view b) {
  std::string fa = fold(a), fb = fold(b);
  if (fa == fb || fa.empty() || fb.empty()) return;
  entries_[fa].insert(fb);
  entries_[fb].insert(fa);
}

const std::set<std::string>* SynonymTable::find(const std::string& token) const {
  auto it = entries_.find(token);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

CanonicalQuery normalize(std::string_view raw) {
  CanonicalQuery q;
  q.raw = std::string(raw);

  // Split the free-text head from trailing "where" clauses.
  std::string_view rest = raw;
  size_t pos = rest.find(kWhereSeparator);
  q.name_text = std::string(trim(pos == std::string_view::npos ? rest : rest.substr(0, pos)));
  while (pos != std::string_view::npos) {
    rest.remove_prefix(pos + kWhereSeparator.size());
    pos = rest.find(kWhereSeparator);
    std::string_view clause =
        trim(pos == std::string_view::npos ? rest : rest.substr(0, pos));
    if (clause.empty()) throw ValidationError("empty constraint clause after 'where'");
    q.constraints.push_back(parse_clause(clause));
  }

  q.tokens = tokenize(q.name_text);
  if (q.tokens.empty())
    throw EmptyQueryError("query '" + q.raw + "' contains no searchable tokens");
  q.expanded_tokens = q.tokens;
  return q;
}

CanonicalQuery expand_synonyms(CanonicalQuery q, const SynonymTable& table) {
  std::set<std::string> seen(q.tokens.begin(), q.tokens.end());
  std::set<std::string> synonyms;
  for (const std::string& t : q.tokens) {
    if (const auto* group = table.find(t)) {
      for (const std::string& s : *group)
        if (seen.count(s) == 0) synonyms.insert(s);
    }
  }
  q.expanded_tokens = q.tokens;
  q.expanded_tokens.insert(q.expanded_tokens.end(), synonyms.begin(), synonyms.end());
  return q;
}

double edit_similarity(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  size_t d = levenshtein(fold(a), fold(b));
  return 1.0 - static_cast<double>(d) / static_cast<double>(std::max(a.size(), b.size()));
}

double fuzzy_score(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  double substring = 0.0;
  if (!a.empty() && !b.empty() && (contains_ci(b, a) || contains_ci(a, b)))
    substring = 1.0;
  return std::max(substring, edit_similarity(a, b));
}

double score_candidate(const CanonicalQuery& q, const ServiceRef& ref) {
  double best = 0.0;
  for (const std::string& token : q.expanded_tokens) {
    double field_best = std::max(fuzzy_score(token, ref.service_name),
                                 fuzzy_score(token, ref.business_name));
    if (q.is_synonym_token(token)) field_best *= kSynonymPenalty;
    best = std::max(best, field_best);
  }
  return best;
}

bool satisfies(const ScoredCandidate& c, const Constraint& constraint) {
  const std::string& field = field_of(c, constraint.attribute);
  switch (constraint.op) {
    case ConstraintOp::equals:
      return equals_ci(field, constraint.value);
    case ConstraintOp::contains:
      return contains_ci(field, constraint.value);
    case ConstraintOp::prefix:
      return field.size() >= constraint.value.size() &&
             equals_ci(std::string_view(field).substr(0, constraint.value.size()),
                       constraint.value);
  }
  return false;
}

std::vector<ScoredCandidate> csp_filter(std::vector<ScoredCandidate> candidates,
                                        const ConstraintSet& constraints) {
  if (constraints.empty()) return candidates;
  std::vector<ScoredCandidate> out;
  out.reserve(candidates.size());
  for (auto& c : candidates) {
    bool keep = std::all_of(constraints.begin(), constraints.end(),
                            [&](const Constraint& cs) { return satisfies(c, cs); });
    if (keep) out.push_back(std::move(c));
  }
  return out;
}

std::vector<ScoredCandidate> rank(std::vector<ScoredCandidate> candidates) {
  std::sort(candidates.begin(), candidates.end(),
            [](const ScoredCandidate& a, const ScoredCandidate& b) {
              if (a.score != b.score) return a.score > b.score;
              return std::tie(a.ref.service_name, a.ref.service_key) <
                     std::tie(b.ref.service_name, b.ref.service_key);
            });
  return candidates;
}

MetricsReport precision(const std::vector<ScoredCandidate>& result,
                        const std::set<std::string>& relevant_keys) {
  MetricsReport report;
  report.retrieved_count = result.size();
  for (const auto& c : result)
    if (relevant_keys.count(c.ref.service_key) != 0) ++report.relevant_retrieved_count;
  report.precision = result.empty()
                         ? 0.0
                         : static_cast<double>(report.relevant_retrieved_count) /
                               static_cast<double>(report.retrieved_count);
  return report;
}

std::optional<OutputFormat> parse_output_format(std::string_view s) {
  if (s == "table") return OutputFormat::table;
  if (s == "records") return OutputFormat::records;
  return std::nullopt;
}

std::string render_response(const std::vector<ScoredCandidate>& results,
                            OutputFormat format) {
  if (results.empty()) return std::string(kNoServiceFound) + "\n";

  if (format == OutputFormat::records) {
    std::string out;
    for (const auto& c : results) {
      out += to_record(c).dump();
      out.push_back('\n');
    }
    return out;
  }

  std::vector<std::array<std::string, 8>> rows;
  rows.push_back({"SCORE", "ORIGIN", "SERVICE", "BUSINESS", "CATEGORY", "SERVICE_KEY",
                  "BUSINESS_KEY", "SOURCE"});
  for (const auto& c : results) {
    char score[16];
    std::snprintf(score, sizeof(score), "%.3f", c.score);
    rows.push_back({score, std::string(origin_name(c.origin)), c.ref.service_name,
                    c.ref.business_name, c.category, c.ref.service_key,
                    c.ref.business_key, c.ref.endpoint});
  }
  std::array<size_t, 8> widths{};
  for (const auto& row : rows)
    for (size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  std::string out;
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      if (i + 1 < row.size()) out.append(widths[i] - row[i].size() + 2, ' ');
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<ScoredCandidate> parse_records(std::string_view text) {
  std::vector<ScoredCandidate> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string_view sv = trim(line);
    if (sv.empty() || sv == kNoServiceFound) continue;
    nlohmann::json j = nlohmann::json::parse(sv);
    ScoredCandidate c;
    c.ref.business_key = j.at("business_key").get<std::string>();
    c.ref.business_name = j.at("business_name").get<std::string>();
    c.category = j.at("category").get<std::string>();
    c.ref.endpoint = j.at("endpoint").get<std::string>();
    c.origin = j.at("origin").get<std::string>() == "cache" ? Origin::cache : Origin::web;
    c.score = j.at("score").get<double>();
    c.ref.service_key = j.at("service_key").get<std::string>();
    c.ref.service_name = j.at("service_name").get<std::string>();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace disco::matcher
