#include "vrb/index.hpp"

#include <support/synth.hpp>
#include <support/tmpdir.hpp>

#include <doctest.h>

#include <fstream>
#include <vector>

using namespace vrb;

namespace {

IndexSpec spec_of(IndexFamily family, Metric metric = Metric::L2) {
    IndexSpec s;
    s.family = family;
    s.metric = metric;
    s.seed = 77;
    return s;
}

std::vector<char> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::vector<char>(std::istreambuf_iterator<char>(in), {});
}

void spit(const std::string& path, const std::vector<char>& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), std::streamsize(bytes.size()));
}

std::vector<SpVecF> sparse_rows(const MatF& rows) {
    std::vector<SpVecF> out;
    for (int i = 0; i < rows.rows(); ++i) {
        SpVecF v(rows.cols());
        for (int j = 0; j < rows.cols(); ++j)
            if ((i + j) % 2 == 0) v.insertBack(j) = rows(i, j);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

TEST_CASE("every dense family round-trips byte-equivalent searches") {
    testing::TempDir dir;
    const MatF base = synth::random_matrix(180, 12, 41);
    const MatF queries = synth::random_matrix(15, 12, 42);

    for (auto family : {IndexFamily::Flat, IndexFamily::HNSW, IndexFamily::IVFFlat,
                        IndexFamily::SQ, IndexFamily::IVFSQ, IndexFamily::NSG, IndexFamily::LSH}) {
        for (auto metric : {Metric::L2, Metric::L1, Metric::IP}) {
            const auto built = build_index(spec_of(family, metric), base);
            const auto path = dir.file(to_string(family) + "_" + to_string(metric) + ".idx");
            save_index(path, *built);
            const auto loaded = load_index(path);

            CHECK(loaded->family() == family);
            CHECK(loaded->metric() == metric);
            CHECK(loaded->size() == built->size());
            CHECK(loaded->dim() == built->dim());
            CHECK_FALSE(loaded->sparse_storage());

            for (int qi = 0; qi < queries.rows(); ++qi) {
                const VecF q = queries.row(qi).transpose();
                const auto a = built->search(q, 5);
                const auto b = loaded->search(q, 5);
                CHECK(a.ids == b.ids);
                CHECK(a.scores == b.scores);
            }
        }
    }
}

TEST_CASE("sparse stores survive the round trip") {
    testing::TempDir dir;
    const auto rows = sparse_rows(synth::random_matrix(70, 10, 43));
    const auto queries = sparse_rows(synth::random_matrix(8, 10, 44));

    for (auto family : {IndexFamily::Flat, IndexFamily::IVFFlat}) {
        const auto built = build_index(spec_of(family), rows, 10);
        REQUIRE(built->sparse_storage());
        const auto path = dir.file("sparse_" + to_string(family) + ".idx");
        save_index(path, *built);
        const auto loaded = load_index(path);

        CHECK(loaded->sparse_storage());
        for (const auto& q : queries) {
            const auto a = built->search(q, 4);
            const auto b = loaded->search(q, 4);
            CHECK(a.ids == b.ids);
            CHECK(a.scores == b.scores);
        }
    }
}

TEST_CASE("spec parameters and seed are preserved") {
    testing::TempDir dir;
    auto s = spec_of(IndexFamily::HNSW);
    s.hnsw.m = 12;
    s.hnsw.ef_construction = 150;
    s.hnsw.ef_search = 80;
    s.seed = 123456789ULL;
    const auto built = build_index(s, synth::random_matrix(50, 8, 45));
    const auto path = dir.file("params.idx");
    save_index(path, *built);
    const auto loaded = load_index(path);
    CHECK(loaded->spec().hnsw.m == 12);
    CHECK(loaded->spec().hnsw.ef_construction == 150);
    CHECK(loaded->spec().hnsw.ef_search == 80);
    CHECK(loaded->spec().seed == 123456789ULL);
}

TEST_CASE("malformed files are rejected") {
    testing::TempDir dir;
    const auto built = build_index(spec_of(IndexFamily::Flat), synth::random_matrix(20, 6, 46));
    const auto path = dir.file("good.idx");
    save_index(path, *built);
    const auto bytes = slurp(path);
    REQUIRE(bytes.size() > 16);

    SUBCASE("bad magic") {
        auto bad = bytes;
        bad[0] = 'X';
        spit(dir.file("bad.idx"), bad);
        CHECK_THROWS_AS(load_index(dir.file("bad.idx")), PersistError);
    }
    SUBCASE("unknown version") {
        auto bad = bytes;
        bad[4] = char(0x7F);
        spit(dir.file("bad.idx"), bad);
        CHECK_THROWS_AS(load_index(dir.file("bad.idx")), PersistError);
    }
    SUBCASE("unknown family tag") {
        auto bad = bytes;
        bad[8] = char(0x66);
        spit(dir.file("bad.idx"), bad);
        CHECK_THROWS_AS(load_index(dir.file("bad.idx")), PersistError);
    }
    SUBCASE("truncated payload") {
        auto bad = bytes;
        bad.resize(bad.size() / 2);
        spit(dir.file("bad.idx"), bad);
        CHECK_THROWS_AS(load_index(dir.file("bad.idx")), PersistError);
    }
    SUBCASE("trailing garbage") {
        auto bad = bytes;
        bad.push_back('z');
        spit(dir.file("bad.idx"), bad);
        CHECK_THROWS_AS(load_index(dir.file("bad.idx")), PersistError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_index(dir.file("absent.idx")), IoError);
    }
}

TEST_CASE("saving twice produces identical bytes") {
    testing::TempDir dir;
    const auto built = build_index(spec_of(IndexFamily::NSG), synth::random_matrix(40, 6, 47));
    save_index(dir.file("a.idx"), *built);
    save_index(dir.file("b.idx"), *built);
    CHECK(slurp(dir.file("a.idx")) == slurp(dir.file("b.idx")));
}
