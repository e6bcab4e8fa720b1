#include "vrb/evalkit.hpp"

#include "vrb/errors.hpp"

#include <algorithm>
#include <cmath>

namespace vrb {

int hit_score(const std::set<std::string>& query_keywords,
              const std::set<std::string>& result_keywords) {
    int hits = 0;
    for (const auto& k : query_keywords)
        if (result_keywords.count(k)) ++hits;
    return hits;
}

EvalReport assess_all_queries(const nlohmann::ordered_json& results, const TokenizerSpec& tokenizer,
                              const std::map<std::string, std::set<std::string>>& declared_keywords) {
    if (!results.is_object()) throw MalformedResultsError("results document must be a JSON object");

    EvalReport report;
    long total_hits = 0;
    long total_results = 0;

    for (const auto& [query, entry] : results.items()) {
        if (!entry.is_object() || !entry.contains("results") || !entry["results"].is_array())
            throw MalformedResultsError("entry for '" + query + "' lacks a results array");
        if (entry.contains("query") && !entry["query"].is_string())
            throw MalformedResultsError("entry for '" + query + "' has a non-string query field");

        std::set<std::string> query_kw;
        if (auto it = declared_keywords.find(query); it != declared_keywords.end())
            query_kw = it->second;
        else
            query_kw = extract_keywords(tokenizer, query);

        PerQueryHits pq;
        pq.query = query;
        for (const auto& res : entry["results"]) {
            if (!res.is_object() || !res.contains("description") || !res["description"].is_string() ||
                !res.contains("name") || !res["name"].is_string())
                throw MalformedResultsError("result for '" + query +
                                            "' lacks string description/name fields");
            const std::string text =
                res["description"].get<std::string>() + " " + res["name"].get<std::string>();
            const int hits = hit_score(query_kw, extract_keywords(tokenizer, text));
            pq.per_result_hits.push_back(hits);
            total_hits += hits;
            ++total_results;
        }
        report.per_query.push_back(std::move(pq));
    }

    report.avg_hit_count =
        total_results > 0 ? static_cast<double>(total_hits) / static_cast<double>(total_results) : 0.0;
    report.avg_hit_rate = hit_rate(report.avg_hit_count);
    return report;
}

double hit_rate(double avg_hit_count) {
    if (avg_hit_count < 0.0) throw InvalidArgumentError("hit count must not be negative");
    return avg_hit_count / 3.0;
}

double relative_gap(double a, double b) {
    if (b <= 0.0) throw InvalidArgumentError("relative gap needs a positive base value");
    return (a - b) / b;
}

namespace {

void check_component(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ComponentOutOfRangeError(std::string(name) + " must lie in [0, 1], got " +
                                       std::to_string(v));
}

}  // namespace

double composite_score(const ComponentScores& s, const CompositeWeights& w) {
    check_component(s.fluency, "fluency");
    check_component(s.accuracy, "accuracy");
    check_component(s.relevance, "relevance");
    if (!(w.d1 > 0.0 && w.d2 > 0.0 && w.d3 > 0.0))
        throw InvalidArgumentError("composite weights must be positive");
    return w.d1 * s.fluency + w.d2 * std::log2(s.accuracy + 1.0) + w.d3 * std::exp(s.relevance);
}

double percentize(double score, const CompositeWeights& w) {
    return score / composite_score({1.0, 1.0, 1.0}, w);
}

EvalReport eval_report_from_json(const nlohmann::ordered_json& j) {
    EvalReport report;
    try {
        report.config_name = j.at("config_name").get<std::string>();
        report.avg_hit_count = j.at("avg_hit_count").get<double>();
        report.avg_hit_rate = j.at("avg_hit_rate").get<double>();
        for (const auto& entry : j.at("per_query")) {
            PerQueryHits pq;
            pq.query = entry.at("query").get<std::string>();
            pq.per_result_hits = entry.at("per_result_hits").get<std::vector<int>>();
            report.per_query.push_back(std::move(pq));
        }
    } catch (const nlohmann::json::exception& e) {
        throw MalformedResultsError(std::string("evaluation report: ") + e.what());
    }
    return report;
}

nlohmann::ordered_json eval_report_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["config_name"] = report.config_name;
    j["avg_hit_count"] = report.avg_hit_count;
    j["avg_hit_rate"] = report.avg_hit_rate;
    auto& per_query = j["per_query"] = nlohmann::ordered_json::array();
    for (const auto& pq : report.per_query) {
        nlohmann::ordered_json entry;
        entry["query"] = pq.query;
        entry["per_result_hits"] = pq.per_result_hits;
        per_query.push_back(std::move(entry));
    }
    return j;
}

}  // namespace vrb
