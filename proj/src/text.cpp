#include "vrb/text.hpp"

#include "vrb/errors.hpp"

#include <cstdint>

namespace vrb {

std::string to_string(TokenizerMode m) {
    switch (m) {
        case TokenizerMode::UnicodeMixed: return "unicode_mixed";
        case TokenizerMode::CharBigram: return "char_bigram";
        case TokenizerMode::Whitespace: return "whitespace";
    }
    return "?";
}

TokenizerMode tokenizer_mode_from_string(const std::string& s) {
    if (s == "unicode_mixed") return TokenizerMode::UnicodeMixed;
    if (s == "char_bigram") return TokenizerMode::CharBigram;
    if (s == "whitespace") return TokenizerMode::Whitespace;
    throw InvalidArgumentError("unknown tokenizer mode: " + s);
}

bool is_cjk(char32_t cp) {
    return (cp >= 0x4E00 && cp <= 0x9FFF) ||    // CJK Unified Ideographs
           (cp >= 0x3400 && cp <= 0x4DBF) ||    // Extension A
           (cp >= 0xF900 && cp <= 0xFAFF) ||    // Compatibility Ideographs
           (cp >= 0x20000 && cp <= 0x2A6DF);    // Extension B
}

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

namespace {

// Decodes the UTF-8 sequence starting at s[i]; advances i. Invalid bytes
// decode as U+FFFD one byte at a time so tokenization never throws.
char32_t decode_utf8(const std::string& s, std::size_t& i) {
    const auto byte = [&](std::size_t j) { return static_cast<std::uint8_t>(s[j]); };
    const std::uint8_t b0 = byte(i);
    std::size_t len = 1;
    char32_t cp = 0xFFFD;
    if (b0 < 0x80) {
        cp = b0;
    } else if ((b0 & 0xE0) == 0xC0 && i + 1 < s.size() && (byte(i + 1) & 0xC0) == 0x80) {
        cp = (char32_t(b0 & 0x1F) << 6) | (byte(i + 1) & 0x3F);
        len = 2;
    } else if ((b0 & 0xF0) == 0xE0 && i + 2 < s.size() && (byte(i + 1) & 0xC0) == 0x80 &&
               (byte(i + 2) & 0xC0) == 0x80) {
        cp = (char32_t(b0 & 0x0F) << 12) | (char32_t(byte(i + 1) & 0x3F) << 6) |
             (byte(i + 2) & 0x3F);
        len = 3;
    } else if ((b0 & 0xF8) == 0xF0 && i + 3 < s.size() && (byte(i + 1) & 0xC0) == 0x80 &&
               (byte(i + 2) & 0xC0) == 0x80 && (byte(i + 3) & 0xC0) == 0x80) {
        cp = (char32_t(b0 & 0x07) << 18) | (char32_t(byte(i + 1) & 0x3F) << 12) |
             (char32_t(byte(i + 2) & 0x3F) << 6) | (byte(i + 3) & 0x3F);
        len = 4;
    }
    i += len;
    return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(char(cp));
    } else if (cp < 0x800) {
        out.push_back(char(0xC0 | (cp >> 6)));
        out.push_back(char(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(char(0xE0 | (cp >> 12)));
        out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(char(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(char(0xF0 | (cp >> 18)));
        out.push_back(char(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(char(0x80 | (cp & 0x3F)));
    }
}

char32_t ascii_lower(char32_t cp) {
    return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
}

void emit_cjk_run(const std::vector<char32_t>& run, TokenizerMode mode,
                  std::vector<std::string>& out) {
    const auto str_of = [&](std::size_t a, std::size_t n) {
        std::string t;
        for (std::size_t j = 0; j < n; ++j) encode_utf8(run[a + j], t);
        return t;
    };
    if (run.size() == 1) {
        out.push_back(str_of(0, 1));
        return;
    }
    for (std::size_t i = 0; i < run.size(); ++i) {
        if (mode == TokenizerMode::UnicodeMixed) out.push_back(str_of(i, 1));
        if (i + 1 < run.size()) out.push_back(str_of(i, 2));
    }
}

}  // namespace

std::vector<std::string> tokenize(const TokenizerSpec& spec, const std::string& text) {
    std::vector<std::string> tokens;
    std::string word;             // pending non-CJK word
    std::vector<char32_t> run;    // pending CJK run

    const bool split_cjk = spec.mode != TokenizerMode::Whitespace;

    const auto flush_word = [&] {
        if (!word.empty()) tokens.push_back(std::move(word));
        word.clear();
    };
    const auto flush_run = [&] {
        if (!run.empty()) emit_cjk_run(run, spec.mode, tokens);
        run.clear();
    };

    std::size_t i = 0;
    while (i < text.size()) {
        char32_t cp = decode_utf8(text, i);
        if (spec.lowercase) cp = ascii_lower(cp);
        if (is_unicode_space(cp)) {
            flush_word();
            flush_run();
        } else if (split_cjk && is_cjk(cp)) {
            flush_word();
            run.push_back(cp);
        } else {
            flush_run();
            encode_utf8(cp, word);
        }
    }
    flush_word();
    flush_run();

    if (!spec.stopwords.empty()) {
        std::vector<std::string> kept;
        kept.reserve(tokens.size());
        for (auto& t : tokens)
            if (!spec.stopwords.count(t)) kept.push_back(std::move(t));
        tokens = std::move(kept);
    }
    return tokens;
}

std::set<std::string> extract_keywords(const TokenizerSpec& spec, const std::string& text) {
    auto tokens = tokenize(spec, text);
    return {tokens.begin(), tokens.end()};
}

}  // namespace vrb
