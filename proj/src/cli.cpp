#include "vrb/cli.hpp"

#include "vrb/bench.hpp"
#include "vrb/corpus.hpp"
#include "vrb/embedding.hpp"
#include "vrb/errors.hpp"
#include "vrb/evalkit.hpp"
#include "vrb/index.hpp"
#include "vrb/llm_http.hpp"
#include "vrb/ragflow.hpp"
#include "vrb/tfidf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vrb::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string pct4(double fraction) { return fmt4(fraction * 100.0) + "%"; }

TokenizerSpec make_tokenizer(const std::string& stopwords_path) {
    TokenizerSpec t;
    if (!stopwords_path.empty()) t.stopwords = load_stopwords(stopwords_path);
    return t;
}

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("failed to write " + path);
}

/// Index build flags shared by build-index and answer. Family and metric
/// stay strings until resolve() so CLI11 error text and ours never mix.
struct SpecFlags {
    std::string family = "flat";
    std::string metric = "l2";
    IndexSpec spec;

    void attach(CLI::App& cmd) {
        cmd.add_option("--family", family, "Index family: flat|hnsw|ivfflat|sq|ivfsq|nsg|lsh")
            ->capture_default_str();
        cmd.add_option("--metric", metric, "Metric: l2|l1|ip")->capture_default_str();
        cmd.add_option("--seed", spec.seed, "Build seed")->capture_default_str();
        cmd.add_option("--hnsw-m", spec.hnsw.m, "HNSW connectivity")->capture_default_str();
        cmd.add_option("--ef-construction", spec.hnsw.ef_construction, "HNSW build beam width")
            ->capture_default_str();
        cmd.add_option("--ef-search", spec.hnsw.ef_search, "HNSW search beam width")
            ->capture_default_str();
        cmd.add_option("--nlist", spec.ivf.nlist, "IVF cluster count (0: sqrt of corpus size)")
            ->capture_default_str();
        cmd.add_option("--nprobe", spec.ivf.nprobe, "IVF probed clusters (0: min(8, nlist))")
            ->capture_default_str();
        cmd.add_option("--kmeans-iters", spec.ivf.kmeans_iters, "IVF k-means iterations")
            ->capture_default_str();
        cmd.add_option("--knn-k", spec.nsg.knn_k, "NSG candidate neighbors per node")
            ->capture_default_str();
        cmd.add_option("--out-degree", spec.nsg.out_degree, "NSG maximum out-degree")
            ->capture_default_str();
        cmd.add_option("--lsh-bits", spec.lsh.n_bits, "LSH hyperplane count")
            ->capture_default_str();
    }

    IndexSpec resolve() const {
        IndexSpec s = spec;
        s.family = family_from_string(family);
        s.metric = metric_from_string(metric);
        return s;
    }
};

/// How one search score should be shown: L2 costs are squared internally,
/// people expect the Euclidean distance; LSH scores are Hamming distances
/// whatever the metric says.
std::pair<std::string, double> display_score(const VectorIndex& index, float score) {
    if (index.family() == IndexFamily::LSH) return {"hamming", score};
    switch (index.metric()) {
        case Metric::L2: return {"distance", std::sqrt(std::max(0.0f, score))};
        case Metric::L1: return {"distance", score};
        case Metric::IP: return {"dot", score};
    }
    return {"score", score};
}

struct ComponentRow {
    std::string model;
    std::string group;  // normalized: "rag" or "fine-tune" kept verbatim otherwise
    ComponentScores components;
    double score = 0.0;
};

std::string normalize_group(std::string g) {
    std::transform(g.begin(), g.end(), g.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (g == "finetune" || g == "ft" || g == "fine_tune") return "fine-tune";
    return g;
}

/// Reads {model, group, fluency, accuracy, relevance} rows, drops rows
/// with out-of-range components (warning on stderr), scores the rest.
std::vector<ComponentRow> load_component_rows(const std::string& path) {
    const auto records = read_csv_rows(path);
    if (records.empty()) throw EmptyInputError(path + " holds no rows");

    const std::vector<std::string> wanted = {"model", "group", "fluency", "accuracy", "relevance"};
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < records[0].size(); ++i) col[records[0][i]] = i;
    for (const auto& name : wanted)
        if (!col.count(name)) throw MissingColumnError(path + " lacks column '" + name + "'");

    const auto number = [&](const std::string& cell, std::size_t record) {
        try {
            std::size_t used = 0;
            const double v = std::stod(cell, &used);
            if (used != cell.size()) throw std::invalid_argument(cell);
            return v;
        } catch (const std::exception&) {
            throw ParseError(path + " record " + std::to_string(record) + ": '" + cell +
                             "' is not a number");
        }
    };

    std::vector<ComponentRow> rows;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != records[0].size())
            throw ParseError(path + " record " + std::to_string(r) + ": expected " +
                             std::to_string(records[0].size()) + " fields, got " +
                             std::to_string(rec.size()));
        ComponentRow row;
        row.model = rec[col["model"]];
        row.group = normalize_group(rec[col["group"]]);
        row.components.fluency = number(rec[col["fluency"]], r);
        row.components.accuracy = number(rec[col["accuracy"]], r);
        row.components.relevance = number(rec[col["relevance"]], r);
        try {
            row.score = composite_score(row.components);
        } catch (const ComponentOutOfRangeError& e) {
            std::cerr << "warning: skipping record " << r << " (" << row.model << ", " << row.group
                      << "): " << e.what() << "\n";
            continue;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Improvement of the rag row over the fine-tune row per model, in model
/// first-appearance order. Models missing either group get no entry.
std::vector<std::pair<std::string, double>> improvements(const std::vector<ComponentRow>& rows) {
    std::vector<std::string> order;
    std::map<std::string, std::map<std::string, double>> by_model;
    for (const auto& row : rows) {
        if (!by_model.count(row.model)) order.push_back(row.model);
        by_model[row.model][row.group] = row.score;
    }
    std::vector<std::pair<std::string, double>> out;
    for (const auto& model : order) {
        const auto& groups = by_model[model];
        const auto rag = groups.find("rag");
        const auto ft = groups.find("fine-tune");
        if (rag != groups.end() && ft != groups.end() && ft->second > 0.0)
            out.emplace_back(model, relative_gap(rag->second, ft->second));
    }
    return out;
}

std::string render_aligned(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += "  ";
            out += row[i] + std::string(width[i] - row[i].size(), ' ');
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += "\n";
    }
    return out;
}

std::string render_csv(const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_escape(row[i]);
        out += "\n";
    }
    return out;
}

/// Score-table rows (shared by `score` and `report`): one row per kept
/// component record plus the improvement column on rag rows.
std::vector<std::vector<std::string>> score_table(const std::vector<ComponentRow>& rows) {
    std::map<std::string, double> gain;
    for (const auto& [model, g] : improvements(rows)) gain[model] = g;

    std::vector<std::vector<std::string>> table;
    table.push_back({"model", "group", "fluency", "accuracy", "relevance", "overall_score",
                     "overall_score_pct", "improvement"});
    for (const auto& row : rows) {
        const bool show_gain = row.group == "rag" && gain.count(row.model);
        table.push_back({row.model, row.group, fmt4(row.components.fluency),
                         fmt4(row.components.accuracy), fmt4(row.components.relevance),
                         fmt4(row.score), pct4(percentize(row.score)),
                         show_gain ? fmt4(gain[row.model]) : ""});
    }
    return table;
}

struct ClientFlags {
    std::string mode = "stub";
    std::string base_url;
    std::string model;
    int timeout_seconds = 60;

    void attach(CLI::App& cmd, const std::string& default_mode, const std::string& modes) {
        mode = default_mode;
        cmd.add_option("--mode", mode, "Client: " + modes)->capture_default_str();
        cmd.add_option("--base-url", base_url, "Chat endpoint scheme://host[:port] (mode llm)");
        cmd.add_option("--model", model, "Model name (mode llm)");
        cmd.add_option("--timeout", timeout_seconds, "Request timeout, seconds (mode llm)")
            ->capture_default_str();
    }

    HttpLlmConfig http_config() const {
        if (base_url.empty() || model.empty())
            throw InvalidArgumentError("--mode llm needs --base-url and --model");
        HttpLlmConfig cfg;
        cfg.base_url = base_url;
        cfg.model = model;
        cfg.timeout_seconds = timeout_seconds;
        return cfg;
    }
};

void cmd_build_index(const std::string& corpus_path, const std::string& arm_name,
                     const std::string& embeddings_path, const std::string& stopwords_path,
                     const SpecFlags& flags, const std::string& out_path) {
    const auto corpus = load_attractions(corpus_path);
    const Arm arm = arm_from_string(arm_name);
    const IndexSpec spec = flags.resolve();

    std::unique_ptr<VectorIndex> index;
    if (arm == Arm::TfIdf) {
        TfIdfOptions opts;
        opts.tokenizer = make_tokenizer(stopwords_path);
        const auto model = TfIdfModel::fit(corpus, opts);
        index = build_index(spec, model.doc_rows(), model.vocab_size());
    } else {
        if (embeddings_path.empty())
            throw InvalidArgumentError("--arm embedding needs --embeddings");
        const MatF docs = load_embedding_file(embeddings_path);
        if (docs.rows() != static_cast<Eigen::Index>(corpus.size()))
            throw InvalidArgumentError("embedding file covers " + std::to_string(docs.rows()) +
                                       " rows for a corpus of " + std::to_string(corpus.size()));
        index = build_index(spec, docs);
    }
    save_index(out_path, *index);
    std::cout << "built " << to_string(index->family()) << "/" << to_string(index->metric())
              << " over " << index->size() << " vectors (dim " << index->dim() << ") -> "
              << out_path << "\n";
}

void cmd_query(const std::string& index_path, const std::string& corpus_path,
               const std::string& text, const std::string& query_embeddings_path, int row, int k,
               const std::string& stopwords_path) {
    const auto corpus = load_attractions(corpus_path);
    const auto index = load_index(index_path);
    if (index->size() != static_cast<int>(corpus.size()))
        throw InvalidArgumentError("index holds " + std::to_string(index->size()) +
                                   " vectors but the corpus has " + std::to_string(corpus.size()));

    SearchResult hits;
    if (!text.empty()) {
        TfIdfOptions opts;
        opts.tokenizer = make_tokenizer(stopwords_path);
        const auto model = TfIdfModel::fit(corpus, opts);
        hits = index->search(model.transform(text), k);
    } else if (!query_embeddings_path.empty()) {
        const MatF queries = load_embedding_file(query_embeddings_path);
        if (row < 0 || row >= queries.rows())
            throw InvalidArgumentError("--row " + std::to_string(row) + " outside 0.." +
                                       std::to_string(queries.rows() - 1));
        hits = index->search(VecF(queries.row(row).transpose()), k);
    } else {
        throw InvalidArgumentError("give --text or --query-embeddings with --row");
    }

    for (std::size_t i = 0; i < hits.ids.size(); ++i) {
        const int id = hits.ids[i];
        const auto [label, value] = display_score(*index, hits.scores[i]);
        std::cout << (i + 1) << ". id=" << id << "  " << label << "=" << fmt4(value) << "  "
                  << corpus[id].name << "\n";
    }
}

int cmd_bench(const BenchConfig& config) {
    const auto outcome = run_bench(config);
    for (const auto& c : outcome.configs)
        if (!c.ok) std::cerr << "failed: " << c.name << ": " << c.error << "\n";
    std::ifstream txt(outcome.summary_txt_path, std::ios::binary);
    std::cout << txt.rdbuf();
    std::cout << "artifacts in " << config.out_dir << "\n";
    return outcome.exit_code;
}

void cmd_eval_hits(const std::string& results_path, const std::string& prompts_path,
                   const std::string& stopwords_path, const std::string& out_path) {
    const auto results = load_json_file(results_path);
    const auto tokenizer = make_tokenizer(stopwords_path);

    std::map<std::string, std::set<std::string>> declared;
    if (!prompts_path.empty())
        for (const auto& p : load_prompts(prompts_path).prompts)
            declared[p.text] = std::set<std::string>(p.features.begin(), p.features.end());

    auto report = assess_all_queries(results, tokenizer, declared);
    report.config_name = fs::path(results_path).stem().string();
    if (!out_path.empty()) write_text_file(out_path, eval_report_json(report).dump(2) + "\n");
    std::cout << report.config_name << ": avg_hit_count=" << fmt4(report.avg_hit_count)
              << "  avg_hit_rate=" << pct4(report.avg_hit_rate) << "\n";
}

void cmd_score(const std::string& components_path, const std::string& out_path) {
    const auto rows = load_component_rows(components_path);
    if (rows.empty()) throw EmptyInputError("no usable rows in " + components_path);
    const auto table = score_table(rows);
    if (!out_path.empty()) write_text_file(out_path, render_csv(table));
    std::cout << render_aligned(table);
}

void cmd_report(const std::string& bench_dir, const std::string& components_path,
                std::string out_prefix) {
    if (out_prefix.empty()) out_prefix = (fs::path(bench_dir) / "report").string();

    std::vector<std::string> eval_files;
    for (const auto& entry : fs::directory_iterator(bench_dir)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("eval_", 0) == 0 && entry.path().extension() == ".json")
            eval_files.push_back(entry.path().string());
    }
    if (eval_files.empty()) throw EmptyInputError("no eval_*.json files in " + bench_dir);
    std::sort(eval_files.begin(), eval_files.end());

    std::vector<ConfigOutcome> configs;
    bool tfidf_arm = false, embedding_arm = false;
    for (const auto& path : eval_files) {
        ConfigOutcome c;
        c.report = eval_report_from_json(load_json_file(path));
        c.name = c.report.config_name.empty() ? fs::path(path).stem().string().substr(5)
                                              : c.report.config_name;
        c.ok = true;
        tfidf_arm = tfidf_arm || c.name.rfind("tfidf_", 0) == 0;
        embedding_arm = embedding_arm || c.name.rfind("embedding_", 0) == 0;
        configs.push_back(std::move(c));
    }
    std::sort(configs.begin(), configs.end(),
              [](const ConfigOutcome& a, const ConfigOutcome& b) { return a.name < b.name; });

    const auto tables = make_summary(configs, tfidf_arm, embedding_arm);
    write_text_file(out_prefix + "_retrieval.csv", tables.csv);
    write_text_file(out_prefix + "_retrieval.txt", tables.txt);
    std::cout << tables.txt;

    if (!components_path.empty()) {
        const auto rows = load_component_rows(components_path);
        if (rows.empty()) throw EmptyInputError("no usable rows in " + components_path);
        const auto table = score_table(rows);
        write_text_file(out_prefix + "_scores.csv", render_csv(table));
        write_text_file(out_prefix + "_scores.txt", render_aligned(table));
        std::cout << "\n" << render_aligned(table);
    }
    std::cout << "report files at " << out_prefix << "_*\n";
}

void cmd_extract_knowledge(const std::string& corpus_path, const std::string& out_path,
                           const ClientFlags& client_flags, int max_in_flight) {
    const auto corpus = load_attractions(corpus_path);

    std::map<int, KnowledgeEntry> store;
    if (client_flags.mode == "fallback") {
        for (const auto& a : corpus) store[a.id] = fallback_extract(a);
    } else if (client_flags.mode == "llm") {
        HttpLlmClient client(client_flags.http_config());
        store = build_knowledge_store(corpus, client, max_in_flight);
    } else {
        throw InvalidArgumentError("--mode must be fallback or llm");
    }

    save_knowledge(out_path, store);
    int from_llm = 0;
    for (const auto& [id, entry] : store) from_llm += entry.source == "llm" ? 1 : 0;
    std::cout << "wrote " << store.size() << " knowledge entries (" << from_llm << " llm, "
              << (store.size() - from_llm) << " fallback) -> " << out_path << "\n";
}

void cmd_answer(const std::string& corpus_path, const std::string& knowledge_path,
                const std::string& query, const std::string& stopwords_path,
                const SpecFlags& flags, int k, const ClientFlags& client_flags,
                const GenParams& params) {
    const auto corpus = load_attractions(corpus_path);
    const auto store = load_knowledge(knowledge_path);
    validate_knowledge(store, corpus);

    TfIdfOptions opts;
    opts.tokenizer = make_tokenizer(stopwords_path);
    const auto model = TfIdfModel::fit(corpus, opts);
    const auto index = build_index(flags.resolve(), model.doc_rows(), model.vocab_size());

    RagStack stack;
    stack.vectorizer = &model;
    stack.index = index.get();
    stack.corpus = &corpus;
    stack.tokenizer = opts.tokenizer;

    StubLlmClient stub;
    std::optional<HttpLlmClient> http;
    LlmClient* client = &stub;
    if (client_flags.mode == "llm") {
        http.emplace(client_flags.http_config());
        client = &*http;
    } else if (client_flags.mode != "stub") {
        throw InvalidArgumentError("--mode must be stub or llm");
    }

    const auto result = answer(query, stack, store, *client, params, k);
    std::cout << "query: " << result.query << "\n";
    for (std::size_t i = 0; i < result.attraction_ids.size(); ++i) {
        const int id = result.attraction_ids[i];
        std::cout << "  viewpoint " << (i + 1) << ": id=" << id << "  " << corpus[id].name
                  << "  (knowledge: " << result.knowledge_used[i].source << ")\n";
    }
    std::cout << "\n" << result.answer << "\n";
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Vector-retrieval benchmark over an attraction corpus"};
    app.require_subcommand(1);
    int exit_code = 0;

    // build-index
    auto* build = app.add_subcommand("build-index", "Build one index and save it to a file");
    struct {
        std::string corpus, arm = "tfidf", embeddings, stopwords, out;
        SpecFlags flags;
    } bi;
    build->add_option("--corpus", bi.corpus, "Attraction CSV")->required();
    build->add_option("--arm", bi.arm, "Vectorizer arm: tfidf|embedding")->capture_default_str();
    build->add_option("--embeddings", bi.embeddings, "Document embedding file (embedding arm)");
    build->add_option("--stopwords", bi.stopwords, "Stop-word list (tfidf arm)");
    build->add_option("--out", bi.out, "Index file to write")->required();
    bi.flags.attach(*build);
    build->callback([&] {
        cmd_build_index(bi.corpus, bi.arm, bi.embeddings, bi.stopwords, bi.flags, bi.out);
    });

    // query
    auto* query = app.add_subcommand("query", "Search a saved index");
    struct {
        std::string index, corpus, text, query_embeddings, stopwords;
        int row = 0, k = 3;
    } q;
    query->add_option("--index", q.index, "Index file")->required();
    query->add_option("--corpus", q.corpus, "Attraction CSV the index was built from")->required();
    query->add_option("--text", q.text, "Query text (tfidf-arm indexes)");
    query->add_option("--query-embeddings", q.query_embeddings,
                      "Query embedding file (embedding-arm indexes)");
    query->add_option("--row", q.row, "Row of --query-embeddings to use")->capture_default_str();
    query->add_option("--k", q.k, "Results to return")->capture_default_str();
    query->add_option("--stopwords", q.stopwords, "Stop-word list (tfidf arm)");
    query->callback(
        [&] { cmd_query(q.index, q.corpus, q.text, q.query_embeddings, q.row, q.k, q.stopwords); });

    // bench
    auto* bench = app.add_subcommand("bench", "Run the full benchmark sweep");
    bench->set_config("--config", "", "Configuration file (INI/TOML; flags override)");
    BenchConfig bc;
    std::vector<std::string> arm_names = {"tfidf", "embedding"};
    bool extracted_features = false;
    bench->add_option("--corpus", bc.corpus_path, "Attraction CSV")->required();
    bench->add_option("--prompts", bc.prompts_path, "Prompt JSON")->required();
    bench->add_option("--stopwords", bc.stopwords_path, "Stop-word list");
    bench->add_option("--doc-embeddings", bc.doc_embeddings_path,
                      "Document embedding file (embedding arm)");
    bench->add_option("--query-embeddings", bc.query_embeddings_path,
                      "Query embedding file (embedding arm)");
    bench->add_option("--arms", arm_names, "Arms to run (tfidf, embedding)")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--k", bc.k, "Results per query")->capture_default_str();
    bench->add_option("--seed", bc.seed, "Sweep seed")->capture_default_str();
    bench->add_option("--jobs", bc.jobs, "Parallel configurations (0: logical cores)")
        ->capture_default_str();
    bench->add_option("--out", bc.out_dir, "Output directory")->capture_default_str();
    bench->add_flag("--extracted-features", extracted_features,
                    "Score against keywords extracted from prompt text instead of declared "
                    "feature lists");
    bench->callback([&] {
        bc.arms.clear();
        for (const auto& name : arm_names) bc.arms.push_back(arm_from_string(name));
        bc.use_declared_features = !extracted_features;
        bc.tokenizer = TokenizerSpec{};
        exit_code = cmd_bench(bc);
    });

    // eval-hits
    auto* eval = app.add_subcommand("eval-hits", "Score one results JSON file");
    struct {
        std::string results, prompts, stopwords, out;
    } ev;
    eval->add_option("--results", ev.results, "Results JSON from a sweep")->required();
    eval->add_option("--prompts", ev.prompts, "Prompt JSON with declared features");
    eval->add_option("--stopwords", ev.stopwords, "Stop-word list");
    eval->add_option("--out", ev.out, "Write the evaluation report JSON here");
    eval->callback([&] { cmd_eval_hits(ev.results, ev.prompts, ev.stopwords, ev.out); });

    // score
    auto* score = app.add_subcommand("score", "Composite scores from component ratings");
    struct {
        std::string components, out;
    } sc;
    score->add_option("--components", sc.components,
                      "CSV with model,group,fluency,accuracy,relevance")
        ->required();
    score->add_option("--out", sc.out, "Write the score table CSV here");
    score->callback([&] { cmd_score(sc.components, sc.out); });

    // report
    auto* report = app.add_subcommand("report", "Tables from sweep artifacts");
    struct {
        std::string bench_dir, components, out_prefix;
    } rp;
    report->add_option("--bench-dir", rp.bench_dir, "Directory written by bench")->required();
    report->add_option("--components", rp.components,
                       "Component CSV for the score table (optional)");
    report->add_option("--out-prefix", rp.out_prefix,
                       "Prefix for report files (default: <bench-dir>/report)");
    report->callback([&] { cmd_report(rp.bench_dir, rp.components, rp.out_prefix); });

    // extract-knowledge
    auto* extract = app.add_subcommand("extract-knowledge",
                                       "Build the external-knowledge store for a corpus");
    struct {
        std::string corpus, out;
        ClientFlags client;
        int max_in_flight = 4;
    } ek;
    extract->add_option("--corpus", ek.corpus, "Attraction CSV")->required();
    extract->add_option("--out", ek.out, "Knowledge store JSON to write")->required();
    extract->add_option("--max-in-flight", ek.max_in_flight, "Concurrent extraction calls")
        ->capture_default_str();
    ek.client.attach(*extract, "fallback", "fallback|llm");
    extract->callback(
        [&] { cmd_extract_knowledge(ek.corpus, ek.out, ek.client, ek.max_in_flight); });

    // answer
    auto* ans = app.add_subcommand("answer", "Retrieve, assemble the prompt, and generate");
    struct {
        std::string corpus, knowledge, query, stopwords;
        SpecFlags flags;
        int k = 3;
        ClientFlags client;
        GenParams params;
    } an;
    ans->add_option("--corpus", an.corpus, "Attraction CSV")->required();
    ans->add_option("--knowledge", an.knowledge, "Knowledge store JSON")->required();
    ans->add_option("--query", an.query, "User query text")->required();
    ans->add_option("--stopwords", an.stopwords, "Stop-word list");
    ans->add_option("--k", an.k, "Viewpoints to retrieve")->capture_default_str();
    ans->add_option("--temperature", an.params.temperature, "Generation temperature")
        ->capture_default_str();
    ans->add_option("--max-input-tokens", an.params.max_input_tokens, "Prompt token budget")
        ->capture_default_str();
    ans->add_option("--max-output-tokens", an.params.max_output_tokens, "Generation token cap")
        ->capture_default_str();
    an.flags.attach(*ans);
    an.client.attach(*ans, "stub", "stub|llm");
    ans->callback([&] {
        cmd_answer(an.corpus, an.knowledge, an.query, an.stopwords, an.flags, an.k, an.client,
                   an.params);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

}  // namespace vrb::cli
