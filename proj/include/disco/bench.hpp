#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "disco/engine.hpp"

namespace disco::bench {

double median(std::vector<double> values);
double percentile(std::vector<double> values, double p);  // nearest-rank

// Labeled corpus: lines of `query | relevant_key,relevant_key,...`,
// `#` comments.
struct LabeledQuery {
  std::string query;
  std::set<std::string> relevant_keys;
};

std::vector<LabeledQuery> load_labeled_corpus(const std::string& path);
std::vector<LabeledQuery> parse_labeled_corpus(std::istream& in);

struct PrecisionRow {
  std::string query;
  size_t retrieved = 0;
  size_t relevant_retrieved = 0;
  double precision = 0.0;
};

struct PrecisionReport {
  std::vector<PrecisionRow> rows;
  double mean_precision = 0.0;
};

// Runs every labeled query through the engine and measures precision.
// CSV columns: query,retrieved,relevant_retrieved,precision; the final row
// reports the mean.
PrecisionReport bench_precision(Engine& engine, const std::vector<LabeledQuery>& corpus,
                                DiscoverOptions opts = {});
void write_precision_csv(const PrecisionReport& report, std::ostream& out);

}  // namespace disco::bench
