#pragma once

#include "vrb/corpus.hpp"
#include "vrb/errors.hpp"
#include "vrb/text.hpp"
#include "vrb/types.hpp"

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

namespace vrb {

/// w = tf * log(n_docs / df), natural log by default. The log base only
/// rescales every weight by one positive constant, so rankings under any
/// metric are base-invariant; `log_base` exists to let tests assert that.
inline double tfidf_weight(double tf, double df, double n_docs, double log_base = 0.0) {
    if (df < 1 || df > n_docs)
        throw InvalidArgumentError("tfidf_weight requires 1 <= df <= n_docs");
    if (tf == 0) return 0.0;
    double w = tf * std::log(n_docs / df);
    if (log_base > 0) w /= std::log(log_base);
    return w;
}

struct TfIdfOptions {
    TokenizerSpec tokenizer;
    double log_base = 0.0;   // 0 = natural log
    bool normalize = false;  // L2-normalize rows; off to match the bare product
};

/// Fitted TF-IDF vocabulary over a corpus. The document text of an
/// attraction is its name and description joined by one space; vocabulary
/// indices follow lexicographic term order.
class TfIdfModel {
public:
    /// Throws EmptyVocabularyError when no document yields any token.
    static TfIdfModel fit(const std::vector<Attraction>& corpus, const TfIdfOptions& opts);

    /// Sparse TF-IDF vector of arbitrary text. Out-of-vocabulary tokens are
    /// dropped; exact-zero weights are not stored.
    SpVecF transform(const std::string& text) const;

    /// The fit-time document rows, computed from the token counts cached
    /// during fit (not via transform).
    const std::vector<SpVecF>& doc_rows() const { return doc_rows_; }

    int vocab_size() const { return int(terms_.size()); }
    int n_docs() const { return n_docs_; }
    const std::vector<std::string>& terms() const { return terms_; }
    int doc_freq(const std::string& term) const;
    int index_of(const std::string& term) const;  // -1 when absent
    const TfIdfOptions& options() const { return opts_; }

    static std::string doc_text(const Attraction& a) { return a.name + " " + a.description; }

private:
    TfIdfOptions opts_;
    std::vector<std::string> terms_;           // sorted; position = column index
    std::vector<int> df_;                      // aligned with terms_
    std::unordered_map<std::string, int> term_index_;
    std::vector<SpVecF> doc_rows_;
    int n_docs_ = 0;
};

}  // namespace vrb
