#include "vrb/ragflow.hpp"

#include "vrb/errors.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <thread>

namespace vrb {

namespace {

const char* kInstructionTemplate =
    "Please use the provided viewpoint knowledge to introduce the viewpoint to the user. "
    "Always adhere strictly to the provided viewpoint information.";

std::string trim_copy(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n\f\v");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n\f\v");
    return s.substr(a, b - a + 1);
}

std::string knowledge_block(const KnowledgeEntry& e, std::size_t rank) {
    return "Viewpoint " + std::to_string(rank) + "\nHistory: " + e.history +
           "\nGeography: " + e.geography;
}

}  // namespace

std::string StubLlmClient::generate(const std::string& instruction, const std::string& input,
                                    const GenParams& params) {
    if (on_generate) return on_generate(instruction, input, params);
    return input;
}

std::map<std::string, std::string> StubLlmClient::call_function(const FunctionSchema& schema,
                                                                const std::string& input) {
    if (on_call_function) return on_call_function(schema, input);
    std::map<std::string, std::string> out;
    for (const auto& f : schema.fields) out[f] = input;
    return out;
}

RagPrompt build_rag_prompt(const std::string& query, const std::vector<KnowledgeEntry>& knowledge,
                           const TokenizerSpec& tokenizer, const GenParams& params) {
    if (knowledge.empty()) throw NoKnowledgeError();

    const auto token_count = [&](const std::string& text) {
        return static_cast<int>(tokenize(tokenizer, text).size());
    };

    RagPrompt p;
    p.instruction = kInstructionTemplate;
    p.input = query;
    if (token_count(p.input) > params.max_input_tokens)
        throw InvalidArgumentError("query alone exceeds max_input_tokens");

    for (std::size_t i = 0; i < knowledge.size(); ++i) {
        const std::string extended = p.input + "\n\n" + knowledge_block(knowledge[i], i + 1);
        if (token_count(extended) > params.max_input_tokens) break;
        p.input = extended;
    }
    return p;
}

KnowledgeEntry extract_knowledge(const Attraction& attraction, LlmClient& client) {
    if (attraction.description.empty())
        throw InvalidArgumentError("attraction " + std::to_string(attraction.id) +
                                   " has no description to extract from");

    const FunctionSchema schema{"extract_viewpoint_knowledge", {"history", "geography"}};
    const std::string input = attraction.name + "\n" + attraction.description;

    for (int attempt = 0; attempt < 2; ++attempt) {
        auto fields = client.call_function(schema, input);
        const std::string history = trim_copy(fields["history"]);
        const std::string geography = trim_copy(fields["geography"]);
        if (!history.empty() && !geography.empty())
            return KnowledgeEntry{attraction.id, history, geography, "llm"};
    }
    throw ExtractionFailedError(attraction.id);
}

KnowledgeEntry fallback_extract(const Attraction& attraction) {
    if (attraction.description.empty())
        throw InvalidArgumentError("attraction " + std::to_string(attraction.id) +
                                   " has no description to extract from");

    // Sentence split keeping terminators; both ASCII and CJK enders count.
    static const std::array<std::string, 7> enders = {"。", "！", "？", ".", "!", "?", "\n"};
    std::vector<std::string> sentences;
    std::string cur;
    const std::string& text = attraction.description;
    for (std::size_t i = 0; i < text.size();) {
        bool ended = false;
        for (const auto& e : enders) {
            if (text.compare(i, e.size(), e) == 0) {
                cur += e;
                i += e.size();
                if (!trim_copy(cur).empty()) sentences.push_back(cur);
                cur.clear();
                ended = true;
                break;
            }
        }
        if (!ended) cur += text[i++];
    }
    if (!trim_copy(cur).empty()) sentences.push_back(cur);

    static const std::array<std::string, 24> lexicon = {
        "位于", "地处", "坐落", "毗邻", "接壤", "临近", "地理", "海拔",
        "面积", "距离", "公里", "千米", "东经", "北纬", "省",   "市",
        "县",   "区",   "镇",   "乡",   "located", "north", "south", "km"};

    std::string history;
    std::string geography;
    for (const auto& s : sentences) {
        const bool geo = std::any_of(lexicon.begin(), lexicon.end(), [&](const std::string& w) {
            return s.find(w) != std::string::npos;
        });
        (geo ? geography : history) += s;
    }

    if (trim_copy(geography).empty()) {
        // A filled address is usually already fully qualified; fall back to
        // the region fields only when it is absent.
        std::string addr = attraction.address;
        if (addr.empty())
            for (const std::string* part :
                 {&attraction.province, &attraction.city, &attraction.district})
                addr += *part;
        geography = addr.empty() ? attraction.name : "位于" + addr;
    }
    if (trim_copy(history).empty()) history = attraction.description;

    return KnowledgeEntry{attraction.id, trim_copy(history), trim_copy(geography), "fallback"};
}

std::map<int, KnowledgeEntry> build_knowledge_store(const std::vector<Attraction>& corpus,
                                                    LlmClient& client, int max_in_flight) {
    if (max_in_flight < 1) throw InvalidArgumentError("max_in_flight must be at least 1");

    std::map<int, KnowledgeEntry> store;
    if (corpus.empty()) return store;

    std::mutex store_mutex;
    std::exception_ptr failure;
    std::atomic<std::size_t> next{0};

    const int workers = std::min(max_in_flight, static_cast<int>(corpus.size()));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= corpus.size()) return;
                try {
                    auto entry = extract_knowledge(corpus[i], client);
                    std::lock_guard<std::mutex> lock(store_mutex);
                    store.emplace(entry.attraction_id, std::move(entry));
                } catch (...) {
                    std::lock_guard<std::mutex> lock(store_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return store;
}

RagAnswer answer(const std::string& query, const RagStack& stack,
                 const std::map<int, KnowledgeEntry>& store, LlmClient& client,
                 const GenParams& params, int k) {
    if (!stack.index || !stack.corpus)
        throw InvalidArgumentError("answer() needs an index and a corpus");
    if ((stack.vectorizer != nullptr) == static_cast<bool>(stack.embedder))
        throw InvalidArgumentError("set exactly one of vectorizer and embedder");

    SearchResult hits;
    if (stack.vectorizer)
        hits = stack.index->search(stack.vectorizer->transform(query), k);
    else
        hits = stack.index->search(stack.embedder(query), k);

    RagAnswer out;
    out.query = query;
    out.attraction_ids = hits.ids;
    for (int id : hits.ids) {
        auto it = store.find(id);
        if (it == store.end()) throw MissingKnowledgeError(id);
        out.knowledge_used.push_back(it->second);
    }

    const auto prompt = build_rag_prompt(query, out.knowledge_used, stack.tokenizer, params);
    out.answer = client.generate(prompt.instruction, prompt.input, params);
    return out;
}

}  // namespace vrb
