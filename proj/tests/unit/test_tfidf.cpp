#include "vrb/errors.hpp"
#include "vrb/tfidf.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace vrb;

namespace {

Attraction doc(const std::string& name, const std::string& description) {
    Attraction a;
    a.name = name;
    a.description = description;
    return a;
}

TfIdfOptions whitespace_options() {
    TfIdfOptions opts;
    opts.tokenizer.mode = TokenizerMode::Whitespace;
    return opts;
}

}  // namespace

TEST_CASE("tfidf_weight matches the formula") {
    CHECK(tfidf_weight(1, 2, 3) == doctest::Approx(std::log(1.5)));
    CHECK(tfidf_weight(2, 2, 3) == doctest::Approx(2 * std::log(1.5)));
    CHECK(tfidf_weight(0, 1, 3) == 0.0);
    // df == n_docs makes the idf factor vanish for any tf.
    CHECK(tfidf_weight(5, 3, 3) == 0.0);
    CHECK(tfidf_weight(1, 2, 4, 2.0) == doctest::Approx(std::log(2.0) / std::log(2.0)));
    CHECK_THROWS_AS(tfidf_weight(1, 0, 3), InvalidArgumentError);
    CHECK_THROWS_AS(tfidf_weight(1, 4, 3), InvalidArgumentError);
}

TEST_CASE("fit builds a sorted vocabulary with exact weights") {
    const std::vector<Attraction> corpus = {
        doc("a", "b b c"),   // tokens: a b b c
        doc("a", "c"),       // tokens: a c
        doc("d", "b"),       // tokens: d b
    };
    const auto model = TfIdfModel::fit(corpus, whitespace_options());

    CHECK(model.n_docs() == 3);
    CHECK(model.vocab_size() == 4);
    CHECK(model.terms() == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(model.doc_freq("a") == 2);
    CHECK(model.doc_freq("d") == 1);
    CHECK(model.doc_freq("zz") == 0);
    CHECK(model.index_of("b") == 1);
    CHECK(model.index_of("zz") == -1);

    const auto& rows = model.doc_rows();
    REQUIRE(rows.size() == 3);
    const float w1 = float(std::log(3.0 / 2.0));  // df 2
    const float w3 = float(std::log(3.0 / 1.0));  // df 1
    CHECK(rows[0].coeff(0) == w1);       // a: tf 1
    CHECK(rows[0].coeff(1) == 2 * w1);   // b: tf 2
    CHECK(rows[0].coeff(2) == w1);       // c: tf 1
    CHECK(rows[0].coeff(3) == 0.0f);
    CHECK(rows[2].coeff(3) == w3);       // d only in doc 2
}

TEST_CASE("terms present in every document carry zero weight and are not stored") {
    const std::vector<Attraction> corpus = {doc("x", "a"), doc("x", "b")};
    const auto model = TfIdfModel::fit(corpus, whitespace_options());
    for (const auto& row : model.doc_rows())
        for (SpVecF::InnerIterator it(row); it; ++it)
            CHECK(model.terms()[std::size_t(it.index())] != "x");
}

TEST_CASE("transform agrees with the fitted rows and drops oov tokens") {
    const std::vector<Attraction> corpus = {doc("a", "b b c"), doc("a", "c"), doc("d", "b")};
    const auto model = TfIdfModel::fit(corpus, whitespace_options());

    const auto v = model.transform("a b b c");
    const auto& row = model.doc_rows()[0];
    REQUIRE(v.nonZeros() == row.nonZeros());
    for (SpVecF::InnerIterator iv(v), ir(row); iv; ++iv, ++ir) {
        CHECK(iv.index() == ir.index());
        CHECK(iv.value() == ir.value());
    }

    CHECK(model.transform("nothing known here").nonZeros() == 0);
    CHECK(model.transform("").nonZeros() == 0);
}

TEST_CASE("normalize produces unit rows") {
    auto opts = whitespace_options();
    opts.normalize = true;
    const auto model = TfIdfModel::fit({doc("a", "b b c"), doc("d", "e")}, opts);
    for (const auto& row : model.doc_rows()) {
        double norm_sq = 0.0;
        for (SpVecF::InnerIterator it(row); it; ++it) norm_sq += double(it.value()) * it.value();
        CHECK(norm_sq == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("log base rescales all weights by one constant") {
    const std::vector<Attraction> corpus = {doc("a", "b b c"), doc("a", "c"), doc("d", "b")};
    auto base2 = whitespace_options();
    base2.log_base = 2.0;
    const auto nat = TfIdfModel::fit(corpus, whitespace_options());
    const auto two = TfIdfModel::fit(corpus, base2);

    const double expected = 1.0 / std::log(2.0);
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        SpVecF::InnerIterator in(nat.doc_rows()[d]), it(two.doc_rows()[d]);
        for (; in; ++in, ++it) {
            REQUIRE(it);
            CHECK(in.index() == it.index());
            CHECK(double(it.value()) / double(in.value()) ==
                  doctest::Approx(expected).epsilon(1e-5));
        }
    }
}

TEST_CASE("degenerate corpora are rejected") {
    CHECK_THROWS_AS(TfIdfModel::fit({}, whitespace_options()), EmptyInputError);
    CHECK_THROWS_AS(TfIdfModel::fit({doc("", ""), doc("", " ")}, whitespace_options()),
                    EmptyVocabularyError);
}
