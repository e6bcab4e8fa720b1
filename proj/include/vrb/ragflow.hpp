#pragma once

#include "vrb/corpus.hpp"
#include "vrb/index.hpp"
#include "vrb/text.hpp"
#include "vrb/tfidf.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace vrb {

struct GenParams {
    double temperature = 0.95;
    int max_input_tokens = 1024;
    int max_output_tokens = 512;
};

/// Named function-call schema; every field is expected back as text.
struct FunctionSchema {
    std::string name;
    std::vector<std::string> fields;
};

/// Narrow generation interface. Implementations must be deterministic when
/// they are stubs; network implementations must enforce a request timeout.
class LlmClient {
public:
    virtual ~LlmClient() = default;

    virtual std::string generate(const std::string& instruction, const std::string& input,
                                 const GenParams& params) = 0;
    virtual std::map<std::string, std::string> call_function(const FunctionSchema& schema,
                                                             const std::string& input) = 0;
};

/// Offline deterministic client. By default `generate` echoes its input and
/// `call_function` fills every schema field with the input; tests install
/// their own handlers when they need scripted replies.
class StubLlmClient : public LlmClient {
public:
    std::function<std::string(const std::string&, const std::string&, const GenParams&)> on_generate;
    std::function<std::map<std::string, std::string>(const FunctionSchema&, const std::string&)>
        on_call_function;

    std::string generate(const std::string& instruction, const std::string& input,
                         const GenParams& params) override;
    std::map<std::string, std::string> call_function(const FunctionSchema& schema,
                                                     const std::string& input) override;
};

struct RagPrompt {
    std::string instruction;
    std::string input;
};

/// Assembles the generation prompt. The instruction is the fixed template;
/// the input is the query followed by one labeled block per knowledge
/// entry in retrieval order. Entries that would push the token count (per
/// `tokenizer`) beyond params.max_input_tokens are dropped from the tail,
/// never mid-entry. Throws NoKnowledgeError on an empty entry list and
/// InvalidArgumentError when the query alone exceeds the budget.
RagPrompt build_rag_prompt(const std::string& query, const std::vector<KnowledgeEntry>& knowledge,
                           const TokenizerSpec& tokenizer, const GenParams& params = {});

/// Extraction through the client's function-calling surface: one retry,
/// then ExtractionFailedError. Both fields must be non-empty after trim.
KnowledgeEntry extract_knowledge(const Attraction& attraction, LlmClient& client);

/// Offline extractor: sentences of the description that mention the
/// location lexicon become geography, the rest history; the structured
/// address fields back the geography side up when no sentence qualifies.
/// Entries are labeled source="fallback".
KnowledgeEntry fallback_extract(const Attraction& attraction);

/// Knowledge entries for a whole corpus with at most `max_in_flight`
/// extraction calls running at once. Order of the returned map is by
/// attraction id regardless of completion order.
std::map<int, KnowledgeEntry> build_knowledge_store(const std::vector<Attraction>& corpus,
                                                    LlmClient& client, int max_in_flight = 4);

/// Everything answer() needs to turn text into ranked attraction ids.
/// Exactly one of `vectorizer` (sparse arm) or `embedder` (dense arm) must
/// be set.
struct RagStack {
    const TfIdfModel* vectorizer = nullptr;
    std::function<VecF(const std::string&)> embedder;
    const VectorIndex* index = nullptr;
    const std::vector<Attraction>* corpus = nullptr;
    TokenizerSpec tokenizer;
};

struct RagAnswer {
    std::string query;
    std::vector<int> attraction_ids;         // retrieval order, length <= k
    std::vector<KnowledgeEntry> knowledge_used;  // aligned with attraction_ids
    std::string answer;
};

/// Full flow: vectorize, retrieve top k, load knowledge, assemble prompt,
/// generate. attraction_ids are the retrieval ids untouched. Throws
/// MissingKnowledgeError when the store lacks a retrieved id.
RagAnswer answer(const std::string& query, const RagStack& stack,
                 const std::map<int, KnowledgeEntry>& store, LlmClient& client,
                 const GenParams& params = {}, int k = 3);

}  // namespace vrb
