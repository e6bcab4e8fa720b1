#include "vrb/bench.hpp"

#include "vrb/embedding.hpp"
#include "vrb/errors.hpp"
#include "vrb/tfidf.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <thread>

namespace vrb {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string pct4(double fraction) { return fmt4(fraction * 100.0) + "%"; }

IndexSpec make_spec(IndexFamily family, Metric metric, std::uint64_t seed) {
    IndexSpec s;
    s.family = family;
    s.metric = metric;
    s.seed = seed;
    return s;
}

std::string spec_label(const IndexSpec& s) {
    return to_string(s.family) + "_" + to_string(s.metric);
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("failed to write " + path);
}

struct ArmData {
    // Exactly one of the two vector forms is populated per arm.
    const TfIdfModel* model = nullptr;
    const MatF* dense_docs = nullptr;
    const MatF* dense_queries = nullptr;
};

struct Task {
    Arm arm;
    IndexSpec spec;
    std::string name;
};

}  // namespace

std::vector<IndexSpec> default_grid(std::uint64_t seed) {
    return {
        make_spec(IndexFamily::Flat, Metric::L2, seed),
        make_spec(IndexFamily::HNSW, Metric::L2, seed),
        make_spec(IndexFamily::HNSW, Metric::L1, seed),
        make_spec(IndexFamily::HNSW, Metric::IP, seed),
        make_spec(IndexFamily::IVFFlat, Metric::L2, seed),
        make_spec(IndexFamily::SQ, Metric::L2, seed),
        make_spec(IndexFamily::IVFSQ, Metric::L2, seed),
        make_spec(IndexFamily::NSG, Metric::L2, seed),
        make_spec(IndexFamily::LSH, Metric::L2, seed),
    };
}

BenchOutcome run_bench(const BenchConfig& config) {
    if (config.arms.empty()) throw InvalidArgumentError("enable at least one arm");
    if (config.k < 1) throw InvalidArgumentError("k must be at least 1");

    const auto corpus = load_attractions(config.corpus_path);
    const auto prompts = load_prompts(config.prompts_path);

    TokenizerSpec tokenizer = config.tokenizer;
    if (!config.stopwords_path.empty()) tokenizer.stopwords = load_stopwords(config.stopwords_path);

    const bool use_tfidf =
        std::find(config.arms.begin(), config.arms.end(), Arm::TfIdf) != config.arms.end();
    const bool use_embedding =
        std::find(config.arms.begin(), config.arms.end(), Arm::Embedding) != config.arms.end();

    std::optional<TfIdfModel> model;
    if (use_tfidf) {
        TfIdfOptions opts;
        opts.tokenizer = tokenizer;
        model = TfIdfModel::fit(corpus, opts);
    }

    std::optional<EmbeddingTable> table;
    if (use_embedding) {
        if (config.doc_embeddings_path.empty() || config.query_embeddings_path.empty())
            throw InvalidArgumentError("the embedding arm needs document and query embedding files");
        table = load_embeddings(config.doc_embeddings_path, config.query_embeddings_path);
        if (table->docs.rows() != static_cast<Eigen::Index>(corpus.size()))
            throw InvalidArgumentError("document embeddings cover " +
                                       std::to_string(table->docs.rows()) + " rows for a corpus of " +
                                       std::to_string(corpus.size()));
        if (table->queries.rows() != static_cast<Eigen::Index>(prompts.prompts.size()))
            throw InvalidArgumentError("query embeddings cover " +
                                       std::to_string(table->queries.rows()) + " rows for " +
                                       std::to_string(prompts.prompts.size()) + " prompts");
    }

    const auto grid = config.grid.empty() ? default_grid(config.seed) : config.grid;

    std::vector<Task> tasks;
    for (Arm arm : config.arms)
        for (const auto& spec : grid)
            tasks.push_back({arm, spec, to_string(arm) + "_" + spec_label(spec)});

    fs::create_directories(config.out_dir);
    fs::remove(fs::path(config.out_dir) / "errors.txt");

    std::map<std::string, std::set<std::string>> declared;
    if (config.use_declared_features)
        for (const auto& p : prompts.prompts)
            declared[p.text] = std::set<std::string>(p.features.begin(), p.features.end());

    std::vector<ConfigOutcome> outcomes(tasks.size());
    std::atomic<std::size_t> next{0};

    const auto run_task = [&](const Task& task, ConfigOutcome& out) {
        out.name = task.name;
        std::unique_ptr<VectorIndex> index;
        if (task.arm == Arm::TfIdf)
            index = build_index(task.spec, model->doc_rows(), model->vocab_size());
        else
            index = build_index(task.spec, table->docs);

        ordered_json results = ordered_json::object();
        for (std::size_t qi = 0; qi < prompts.prompts.size(); ++qi) {
            const auto& prompt = prompts.prompts[qi];
            SearchResult hits;
            if (task.arm == Arm::TfIdf)
                hits = index->search(model->transform(prompt.text), config.k);
            else
                hits = index->search(VecF(table->queries.row(qi).transpose()), config.k);

            ordered_json entry;
            entry["query"] = prompt.text;
            auto& arr = entry["results"] = ordered_json::array();
            for (int id : hits.ids) {
                ordered_json r;
                r["description"] = corpus[id].description;
                r["name"] = corpus[id].name;
                arr.push_back(std::move(r));
            }
            results[prompt.text] = std::move(entry);
        }

        const auto results_path = (fs::path(config.out_dir) / (task.name + ".json")).string();
        write_text(results_path, results.dump(2) + "\n");

        auto report = assess_all_queries(results, tokenizer, declared);
        report.config_name = task.name;
        const auto eval_path = (fs::path(config.out_dir) / ("eval_" + task.name + ".json")).string();
        write_text(eval_path, eval_report_json(report).dump(2) + "\n");

        out.report = std::move(report);
        out.ok = true;
    };

    int jobs = config.jobs > 0 ? config.jobs : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                try {
                    run_task(tasks[i], outcomes[i]);
                } catch (const std::exception& e) {
                    outcomes[i].name = tasks[i].name;
                    outcomes[i].ok = false;
                    outcomes[i].error = e.what();
                }
            }
        });
    }
    for (auto& t : pool) t.join();

    std::sort(outcomes.begin(), outcomes.end(),
              [](const ConfigOutcome& a, const ConfigOutcome& b) { return a.name < b.name; });

    BenchOutcome outcome;
    outcome.configs = std::move(outcomes);
    outcome.exit_code =
        std::all_of(outcome.configs.begin(), outcome.configs.end(),
                    [](const ConfigOutcome& c) { return c.ok; })
            ? 0
            : 1;

    std::string errors;
    for (const auto& c : outcome.configs)
        if (!c.ok) errors += c.name + ": " + c.error + "\n";
    if (!errors.empty())
        write_text((fs::path(config.out_dir) / "errors.txt").string(), errors);

    const auto tables = make_summary(outcome.configs, use_tfidf, use_embedding);
    outcome.summary_csv_path = (fs::path(config.out_dir) / "summary.csv").string();
    write_text(outcome.summary_csv_path, tables.csv);
    outcome.summary_txt_path = (fs::path(config.out_dir) / "summary.txt").string();
    write_text(outcome.summary_txt_path, tables.txt);

    return outcome;
}

SummaryTables make_summary(const std::vector<ConfigOutcome>& configs, bool tfidf_arm,
                           bool embedding_arm) {
    const auto find_outcome = [&](const std::string& name) -> const ConfigOutcome* {
        for (const auto& c : configs)
            if (c.name == name) return &c;
        return nullptr;
    };

    // Row labels come from the outcome names with the arm prefix removed,
    // so the table covers whatever grid actually ran.
    std::vector<std::string> labels;
    for (const auto& c : configs) {
        std::string label = c.name;
        for (const char* prefix : {"tfidf_", "embedding_"})
            if (label.rfind(prefix, 0) == 0) label = label.substr(std::string(prefix).size());
        labels.push_back(label);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    struct Row {
        std::string label;
        std::string tf_count, tf_rate, emb_count, emb_rate, gap;
    };
    std::vector<Row> rows;
    double tf_sum = 0.0, emb_sum = 0.0;
    int tf_n = 0, emb_n = 0;

    for (const auto& label : labels) {
        Row row;
        row.label = label;
        const ConfigOutcome* tf = tfidf_arm ? find_outcome("tfidf_" + label) : nullptr;
        const ConfigOutcome* emb = embedding_arm ? find_outcome("embedding_" + label) : nullptr;

        if (!tfidf_arm) {
            row.tf_count = row.tf_rate = "absent";
        } else if (!tf || !tf->ok) {
            row.tf_count = row.tf_rate = "failed";
        } else {
            row.tf_count = fmt4(tf->report.avg_hit_count);
            row.tf_rate = pct4(tf->report.avg_hit_rate);
            tf_sum += tf->report.avg_hit_count;
            ++tf_n;
        }
        if (!embedding_arm) {
            row.emb_count = row.emb_rate = "absent";
        } else if (!emb || !emb->ok) {
            row.emb_count = row.emb_rate = "failed";
        } else {
            row.emb_count = fmt4(emb->report.avg_hit_count);
            row.emb_rate = pct4(emb->report.avg_hit_rate);
            emb_sum += emb->report.avg_hit_count;
            ++emb_n;
        }
        if (tf && tf->ok && emb && emb->ok && emb->report.avg_hit_count > 0.0)
            row.gap = pct4(relative_gap(tf->report.avg_hit_count, emb->report.avg_hit_count));
        else
            row.gap = (tfidf_arm && embedding_arm) ? "n/a" : "absent";
        rows.push_back(std::move(row));
    }

    // The AVG gap compares the two column means, not the mean of row gaps.
    Row avg;
    avg.label = "AVG";
    const double tf_mean = tf_n > 0 ? tf_sum / tf_n : 0.0;
    const double emb_mean = emb_n > 0 ? emb_sum / emb_n : 0.0;
    avg.tf_count = tfidf_arm ? (tf_n > 0 ? fmt4(tf_mean) : "failed") : "absent";
    avg.tf_rate = tfidf_arm ? (tf_n > 0 ? pct4(hit_rate(tf_mean)) : "failed") : "absent";
    avg.emb_count = embedding_arm ? (emb_n > 0 ? fmt4(emb_mean) : "failed") : "absent";
    avg.emb_rate = embedding_arm ? (emb_n > 0 ? pct4(hit_rate(emb_mean)) : "failed") : "absent";
    if (tf_n > 0 && emb_n > 0 && emb_mean > 0.0)
        avg.gap = pct4(relative_gap(tf_mean, emb_mean));
    else
        avg.gap = (tfidf_arm && embedding_arm) ? "n/a" : "absent";
    rows.push_back(std::move(avg));

    const std::vector<std::string> header = {"config",
                                             "tfidf_avg_hit_count",
                                             "tfidf_avg_hit_rate",
                                             "embedding_avg_hit_count",
                                             "embedding_avg_hit_rate",
                                             "avg_gap"};
    SummaryTables tables;
    for (std::size_t i = 0; i < header.size(); ++i) tables.csv += (i ? "," : "") + header[i];
    tables.csv += "\n";
    for (const auto& r : rows) {
        const std::string cells[] = {r.label, r.tf_count, r.tf_rate, r.emb_count, r.emb_rate, r.gap};
        for (std::size_t i = 0; i < 6; ++i) tables.csv += (i ? "," : "") + csv_escape(cells[i]);
        tables.csv += "\n";
    }

    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows) {
        const std::string cells[] = {r.label, r.tf_count, r.tf_rate, r.emb_count, r.emb_rate, r.gap};
        for (std::size_t i = 0; i < 6; ++i) width[i] = std::max(width[i], cells[i].size());
    }
    const auto pad = [&](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    for (std::size_t i = 0; i < header.size(); ++i)
        tables.txt += (i ? "  " : "") + pad(header[i], width[i]);
    tables.txt += "\n";
    for (const auto& r : rows) {
        const std::string cells[] = {r.label, r.tf_count, r.tf_rate, r.emb_count, r.emb_rate, r.gap};
        for (std::size_t i = 0; i < 6; ++i) tables.txt += (i ? "  " : "") + pad(cells[i], width[i]);
        tables.txt += "\n";
    }
    return tables;
}

}  // namespace vrb
