#pragma once

#include <set>
#include <string>
#include <vector>

namespace vrb {

/// How raw text is split into tokens.
///
///  - Whitespace: split on Unicode whitespace only.
///  - CharBigram: contiguous CJK runs emit overlapping character bigrams
///    (a length-1 run emits its single character); non-CJK runs split on
///    whitespace.
///  - UnicodeMixed: CJK runs emit both single characters and bigrams,
///    interleaved in position order; non-CJK runs split on whitespace.
enum class TokenizerMode { UnicodeMixed, CharBigram, Whitespace };

std::string to_string(TokenizerMode m);
TokenizerMode tokenizer_mode_from_string(const std::string& s);

/// Tokenization settings. The mode must stay fixed for the lifetime of a
/// fitted vectorizer, since the vocabulary depends on it.
struct TokenizerSpec {
    TokenizerMode mode = TokenizerMode::UnicodeMixed;
    std::set<std::string> stopwords;
    bool lowercase = true;  // ASCII-range lowercasing only
};

/// Splits UTF-8 text into tokens per the spec's mode, lowercases when
/// flagged, then drops tokens that exactly match a stop word. Empty text
/// yields an empty list.
std::vector<std::string> tokenize(const TokenizerSpec& spec, const std::string& text);

/// Deduplicated set of tokenize() output. Used on both the query and the
/// result side of hit counting.
std::set<std::string> extract_keywords(const TokenizerSpec& spec, const std::string& text);

/// True for Han ideograph code points (the ranges treated as CJK by the
/// tokenizer).
bool is_cjk(char32_t cp);

/// True for Unicode whitespace, including the ideographic space U+3000.
bool is_unicode_space(char32_t cp);

}  // namespace vrb
