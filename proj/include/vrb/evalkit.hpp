#pragma once

#include "vrb/text.hpp"

#include <json.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace vrb {

struct PerQueryHits {
    std::string query;
    std::vector<int> per_result_hits;
};

/// Keyword-hit statistics for one benchmark configuration.
/// avg_hit_rate is a fraction (avg_hit_count / 3): the denominator is the
/// mean declared-feature count per prompt, not the retrieval depth.
struct EvalReport {
    std::string config_name;
    double avg_hit_count = 0.0;
    double avg_hit_rate = 0.0;
    std::vector<PerQueryHits> per_query;
};

struct ComponentScores {
    double fluency = 0.0;
    double accuracy = 0.0;
    double relevance = 0.0;
};

struct CompositeWeights {
    double d1 = 0.3;
    double d2 = 0.2;
    double d3 = 0.4;
};

/// Size of the keyword intersection.
int hit_score(const std::set<std::string>& query_keywords,
              const std::set<std::string>& result_keywords);

/// Scores a results document: map query-text -> {"query", "results":
/// [{"description", "name"}]}. Each result is scored by the keyword
/// intersection between the query and the result's description + " " +
/// name; avg_hit_count averages over every returned result (0 when the
/// document holds none). Entries of `declared_keywords` override keyword
/// extraction for their query; queries not in the map are extracted from
/// the query text. Throws MalformedResultsError on schema violations.
EvalReport assess_all_queries(const nlohmann::ordered_json& results, const TokenizerSpec& tokenizer,
                              const std::map<std::string, std::set<std::string>>& declared_keywords = {});

double hit_rate(double avg_hit_count);

/// (a - b) / b. Throws InvalidArgumentError when b <= 0.
double relative_gap(double a, double b);

/// d1 * fluency + d2 * log2(accuracy + 1) + d3 * e^relevance. Components
/// must lie in [0, 1] (ComponentOutOfRangeError) and weights must be
/// positive (InvalidArgumentError).
double composite_score(const ComponentScores& s, const CompositeWeights& w = {});

/// Score as a fraction of the full score composite_score({1,1,1}, w).
double percentize(double score, const CompositeWeights& w = {});

nlohmann::ordered_json eval_report_json(const EvalReport& report);

/// Inverse of eval_report_json. Throws MalformedResultsError on shape
/// violations.
EvalReport eval_report_from_json(const nlohmann::ordered_json& j);

}  // namespace vrb
