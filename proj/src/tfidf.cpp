#include "vrb/tfidf.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace vrb {

namespace {

SpVecF row_from_counts(const std::map<int, int>& counts, int dim, int n_docs,
                       const std::vector<int>& df, const TfIdfOptions& opts) {
    SpVecF v(dim);
    v.reserve(Eigen::Index(counts.size()));
    double norm_sq = 0.0;
    for (const auto& [idx, tf] : counts) {
        double w = tfidf_weight(tf, df[std::size_t(idx)], n_docs, opts.log_base);
        if (w == 0.0) continue;
        v.insertBack(idx) = float(w);
        norm_sq += w * w;
    }
    if (opts.normalize && norm_sq > 0.0) {
        const float inv = float(1.0 / std::sqrt(norm_sq));
        for (SpVecF::InnerIterator it(v); it; ++it) it.valueRef() *= inv;
    }
    return v;
}

}  // namespace

TfIdfModel TfIdfModel::fit(const std::vector<Attraction>& corpus, const TfIdfOptions& opts) {
    if (corpus.empty()) throw EmptyInputError();

    TfIdfModel model;
    model.opts_ = opts;
    model.n_docs_ = int(corpus.size());

    // Per-document term counts, plus document frequencies keyed by term.
    std::vector<std::unordered_map<std::string, int>> doc_counts(corpus.size());
    std::map<std::string, int> df;  // ordered: vocabulary comes out sorted
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (auto& tok : tokenize(opts.tokenizer, doc_text(corpus[i])))
            ++doc_counts[i][tok];
        for (const auto& [term, tf] : doc_counts[i]) {
            (void)tf;
            ++df[term];
        }
    }
    if (df.empty()) throw EmptyVocabularyError();

    model.terms_.reserve(df.size());
    model.df_.reserve(df.size());
    for (const auto& [term, n] : df) {
        model.term_index_.emplace(term, int(model.terms_.size()));
        model.terms_.push_back(term);
        model.df_.push_back(n);
    }

    model.doc_rows_.reserve(corpus.size());
    for (const auto& counts : doc_counts) {
        std::map<int, int> by_index;
        for (const auto& [term, tf] : counts)
            by_index[model.term_index_.at(term)] = tf;
        model.doc_rows_.push_back(
            row_from_counts(by_index, model.vocab_size(), model.n_docs_, model.df_, opts));
    }
    return model;
}

SpVecF TfIdfModel::transform(const std::string& text) const {
    std::map<int, int> counts;
    for (const auto& tok : tokenize(opts_.tokenizer, text)) {
        auto it = term_index_.find(tok);
        if (it != term_index_.end()) ++counts[it->second];
    }
    return row_from_counts(counts, vocab_size(), n_docs_, df_, opts_);
}

int TfIdfModel::doc_freq(const std::string& term) const {
    auto it = term_index_.find(term);
    return it == term_index_.end() ? 0 : df_[std::size_t(it->second)];
}

int TfIdfModel::index_of(const std::string& term) const {
    auto it = term_index_.find(term);
    return it == term_index_.end() ? -1 : it->second;
}

}  // namespace vrb
