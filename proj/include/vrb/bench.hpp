#pragma once

#include "vrb/corpus.hpp"
#include "vrb/evalkit.hpp"
#include "vrb/index.hpp"
#include "vrb/text.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vrb {

/// Everything one sweep needs. Paths are required per enabled arm; the
/// tokenizer's stop words are loaded from stopwords_path when set.
struct BenchConfig {
    std::string corpus_path;
    std::string prompts_path;
    std::string stopwords_path;
    std::string doc_embeddings_path;
    std::string query_embeddings_path;
    TokenizerSpec tokenizer;
    std::vector<Arm> arms = {Arm::TfIdf, Arm::Embedding};
    std::vector<IndexSpec> grid;  // empty: default_grid(seed)
    int k = 3;
    std::uint64_t seed = 0;
    int jobs = 0;  // parallel configurations; 0 = logical cores
    std::string out_dir = "bench-out";
    bool use_declared_features = true;  // false: extract keywords from prompt text
};

/// One spec per index family plus the two extra HNSW metric rows, all
/// seeded alike: Flat, HNSW x {L2, L1, IP}, IVFFlat, SQ, IVFSQ, NSG, LSH.
std::vector<IndexSpec> default_grid(std::uint64_t seed);

struct ConfigOutcome {
    std::string name;  // {arm}_{family}_{metric}
    bool ok = false;
    std::string error;  // why the configuration was skipped, when !ok
    EvalReport report;  // filled when ok
};

struct BenchOutcome {
    std::vector<ConfigOutcome> configs;  // sorted by name
    std::string summary_csv_path;
    std::string summary_txt_path;
    int exit_code = 0;  // 0 all configurations completed, 1 some failed
};

struct SummaryTables {
    std::string csv;
    std::string txt;
};

/// Renders the comparison table: one row per index configuration (derived
/// from the outcome names by stripping the arm prefix), arm columns side
/// by side, the tfidf-vs-embedding gap with embedding as base, and a
/// final AVG row computed over column means. Percentages carry 4 decimals.
/// Cells of a disabled arm read "absent", of a failed configuration
/// "failed"; a gap that cannot be formed from two completed cells reads
/// "n/a".
SummaryTables make_summary(const std::vector<ConfigOutcome>& configs, bool tfidf_arm,
                           bool embedding_arm);

/// Runs every (arm, index spec) configuration: builds the index, retrieves
/// top k for every prompt, writes the results JSON, scores it, and emits
/// one summary as CSV and aligned text. A configuration failure is
/// recorded and skipped; startup problems (unreadable inputs, missing
/// embedding files) throw instead.
BenchOutcome run_bench(const BenchConfig& config);

}  // namespace vrb
