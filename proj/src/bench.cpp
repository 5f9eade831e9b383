#include "disco/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace disco::bench {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  double rank = std::ceil(p / 100.0 * static_cast<double>(values.size()));
  size_t idx = rank <= 1.0 ? 0 : static_cast<size_t>(rank) - 1;
  return values[std::min(idx, values.size() - 1)];
}

std::vector<LabeledQuery> load_labeled_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open labeled corpus file: " + path);
  return parse_labeled_corpus(in);
}

std::vector<LabeledQuery> parse_labeled_corpus(std::istream& in) {
  std::vector<LabeledQuery> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t bar = t.find('|');
    if (bar == std::string::npos)
      throw ConfigError("labeled corpus line " + std::to_string(lineno) +
                        " is missing '|': " + t);
    LabeledQuery q;
    q.query = trim(t.substr(0, bar));
    if (q.query.empty())
      throw ConfigError("labeled corpus line " + std::to_string(lineno) + " has no query");
    std::stringstream keys(t.substr(bar + 1));
    std::string key;
    while (std::getline(keys, key, ',')) {
      key = trim(key);
      if (!key.empty()) q.relevant_keys.insert(key);
    }
    out.push_back(std::move(q));
  }
  return out;
}

PrecisionReport bench_precision(Engine& engine, const std::vector<LabeledQuery>& corpus,
                                DiscoverOptions opts) {
  PrecisionReport report;
  double sum = 0.0;
  for (const LabeledQuery& lq : corpus) {
    DiscoveryResult r = engine.discover(lq.query, opts);
    matcher::MetricsReport m = matcher::precision(r.candidates, lq.relevant_keys);
    report.rows.push_back(
        PrecisionRow{lq.query, m.retrieved_count, m.relevant_retrieved_count, m.precision});
    sum += m.precision;
  }
  report.mean_precision = report.rows.empty() ? 0.0 : sum / static_cast<double>(report.rows.size());
  return report;
}

void write_precision_csv(const PrecisionReport& report, std::ostream& out) {
  out << "query,retrieved,relevant_retrieved,precision\n";
  char buf[32];
  for (const PrecisionRow& row : report.rows) {
    std::snprintf(buf, sizeof(buf), "%.6f", row.precision);
    out << csv_field(row.query) << ',' << row.retrieved << ',' << row.relevant_retrieved
        << ',' << buf << '\n';
  }
  std::snprintf(buf, sizeof(buf), "%.6f", report.mean_precision);
  out << "mean,,," << buf << '\n';
}

}  // namespace disco::bench
