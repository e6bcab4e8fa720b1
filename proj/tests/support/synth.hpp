#pragma once

#include "vrb/corpus.hpp"
#include "vrb/text.hpp"
#include "vrb/types.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace vrb::synth {

struct SyntheticOptions {
    int n_docs = 563;
    int n_prompts = 180;
    std::uint64_t seed = 20240901;
};

struct SyntheticData {
    std::vector<Attraction> corpus;
    PromptSet prompts;
    std::set<std::string> stopwords;
};

/// Seeded attraction corpus with Chinese-style records. Every description
/// carries exactly 5 distinct two-character feature words from a fixed
/// pool; every prompt targets one document and asks for 1..4 of its
/// features (probabilities 0.1/0.2/0.3/0.4), so declared-feature hit
/// counting has real signal. Names and prompt texts are unique.
SyntheticData generate(const SyntheticOptions& options = {});

/// Hash-addressed bag-of-tokens embedding: each token of `text` adds +-1
/// to one coordinate chosen by its 64-bit FNV-1a hash; the result is L2
/// normalized (an empty bag becomes e0). Stable across platforms.
VecF pseudo_embed(const std::string& text, int dim, const TokenizerSpec& tokenizer);

MatF embed_texts(const std::vector<std::string>& texts, int dim, const TokenizerSpec& tokenizer);

struct FixturePaths {
    std::string corpus;
    std::string prompts;
    std::string stopwords;
    std::string doc_embeddings;
    std::string query_embeddings;
};

/// Writes corpus.csv, prompts.json, stopwords.txt and the two embedding
/// files (documents embed name + " " + description, queries the prompt
/// text) into `dir`.
FixturePaths write_fixture_files(const std::string& dir, const SyntheticData& data,
                                 int embedding_dim);

/// Uniform rows in [-1, 1), for pure geometry tests.
MatF random_matrix(int rows, int cols, std::uint64_t seed);

}  // namespace vrb::synth
