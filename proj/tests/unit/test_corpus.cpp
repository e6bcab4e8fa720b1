#include "vrb/corpus.hpp"
#include "vrb/errors.hpp"

#include <support/tmpdir.hpp>

#include <doctest.h>

#include <fstream>

using namespace vrb;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

Attraction sample(int id) {
    Attraction a;
    a.id = id;
    a.name = "望月湖";
    a.province = "云南省";
    a.city = "临江市";
    a.district = "城东区";
    a.address = "云南省临江市城东区滨湖路12号";
    a.distance = "距市中心8.4公里";
    a.popularity = "4.6分";
    a.ticket_price = "45元";
    a.description = "湖畔有古镇和栈道，适合傍晚散步。";
    a.promotion = "";
    return a;
}

}  // namespace

TEST_CASE("attraction csv round-trips field for field") {
    testing::TempDir dir;
    std::vector<Attraction> corpus;
    auto a = sample(0);
    corpus.push_back(a);
    auto b = sample(1);
    b.name = "青岩寺";
    b.description = "描述里有\"引号\"、逗号，和\n换行。";
    b.promotion = "学生半价";
    corpus.push_back(b);

    const auto path = dir.file("corpus.csv");
    save_attractions(path, corpus);
    const auto loaded = load_attractions(path);

    REQUIRE(loaded.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(loaded[i].id == int(i));
        CHECK(loaded[i].name == corpus[i].name);
        CHECK(loaded[i].province == corpus[i].province);
        CHECK(loaded[i].city == corpus[i].city);
        CHECK(loaded[i].district == corpus[i].district);
        CHECK(loaded[i].address == corpus[i].address);
        CHECK(loaded[i].distance == corpus[i].distance);
        CHECK(loaded[i].popularity == corpus[i].popularity);
        CHECK(loaded[i].ticket_price == corpus[i].ticket_price);
        CHECK(loaded[i].description == corpus[i].description);
        CHECK(loaded[i].promotion == corpus[i].promotion);
    }
}

TEST_CASE("header is matched by name in any order") {
    testing::TempDir dir;
    const auto path = dir.file("corpus.csv");
    write_file(path,
               "description,name,province,city,district,address,distance,popularity,"
               "ticket_price,promotion\n"
               "一段描述,南山,甲省,乙市,丙区,某路1号,3公里,4.2分,20元,\n");
    const auto corpus = load_attractions(path);
    REQUIRE(corpus.size() == 1);
    CHECK(corpus[0].name == "南山");
    CHECK(corpus[0].description == "一段描述");
}

TEST_CASE("csv errors are reported precisely") {
    testing::TempDir dir;
    const auto path = dir.file("bad.csv");

    SUBCASE("missing column") {
        write_file(path, "name,province\nx,y\n");
        CHECK_THROWS_AS(load_attractions(path), MissingColumnError);
    }
    SUBCASE("empty corpus") {
        write_file(path,
                   "name,province,city,district,address,distance,popularity,ticket_price,"
                   "description,promotion\n");
        CHECK_THROWS_AS(load_attractions(path), EmptyCorpusError);
    }
    SUBCASE("wrong field count names the record") {
        write_file(path,
                   "name,province,city,district,address,distance,popularity,ticket_price,"
                   "description,promotion\n"
                   "a,b,c\n");
        try {
            load_attractions(path);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("1") != std::string::npos);
        }
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_attractions(dir.file("nope.csv")), IoError);
    }
}

TEST_CASE("quoted fields follow rfc 4180") {
    testing::TempDir dir;
    const auto path = dir.file("q.csv");
    write_file(path,
               "name,province,city,district,address,distance,popularity,ticket_price,"
               "description,promotion\n"
               "\"有,逗号\",p,c,d,a,dist,pop,tp,\"两行\r\n描述\",\"内\"\"引\"\"号\"\n");
    const auto corpus = load_attractions(path);
    REQUIRE(corpus.size() == 1);
    CHECK(corpus[0].name == "有,逗号");
    CHECK(corpus[0].description == "两行\r\n描述");
    CHECK(corpus[0].promotion == "内\"引\"号");
}

TEST_CASE("read_csv_rows and csv_escape are inverses for odd fields") {
    testing::TempDir dir;
    const auto path = dir.file("r.csv");
    const std::vector<std::string> fields = {"plain", "with,comma", "with\"quote", "with\nnewline"};
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_escape(fields[i]);
    write_file(path, line + "\n");
    const auto rows = read_csv_rows(path);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] == fields);
}

TEST_CASE("stopword files ignore blanks and comments") {
    testing::TempDir dir;
    const auto path = dir.file("stop.txt");
    write_file(path, "的\n\n# comment\n 了 \n的\n");
    CHECK(load_stopwords(path) == std::set<std::string>{"的", "了"});
}

TEST_CASE("prompts validate feature counts") {
    testing::TempDir dir;
    const auto path = dir.file("prompts.json");

    SUBCASE("round-trip preserves order and features") {
        PromptSet prompts;
        prompts.prompts.push_back({"想看雪山", {"雪山"}});
        prompts.prompts.push_back({"有温泉和美食吗", {"温泉", "美食"}});
        save_prompts(path, prompts);
        const auto loaded = load_prompts(path);
        REQUIRE(loaded.prompts.size() == 2);
        CHECK(loaded.prompts[0].text == "想看雪山");
        CHECK(loaded.prompts[1].features == std::vector<std::string>{"温泉", "美食"});
    }
    SUBCASE("duplicates collapse to the first occurrence") {
        write_file(path, R"([{"text":"q","features":["a","b","a"]}])");
        CHECK(load_prompts(path).prompts[0].features == std::vector<std::string>{"a", "b"});
    }
    SUBCASE("zero features rejected with the record index") {
        write_file(path, R"([{"text":"q","features":[]}])");
        try {
            load_prompts(path);
            FAIL("expected FeatureCountError");
        } catch (const FeatureCountError& e) {
            CHECK(std::string(e.what()).find("0") != std::string::npos);
        }
    }
    SUBCASE("five features rejected") {
        write_file(path, R"([{"text":"q","features":["a","b","c","d","e"]}])");
        CHECK_THROWS_AS(load_prompts(path), FeatureCountError);
    }
}

TEST_CASE("knowledge store round-trips and validates against the corpus") {
    testing::TempDir dir;
    const auto path = dir.file("knowledge.json");

    std::map<int, KnowledgeEntry> store;
    store[0] = {0, "建于明代。", "位于湖畔。", "llm"};
    store[1] = {1, "清末重修。", "地处山脚。", "fallback"};
    save_knowledge(path, store);
    const auto loaded = load_knowledge(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded.at(0).history == "建于明代。");
    CHECK(loaded.at(1).source == "fallback");

    std::vector<Attraction> corpus = {sample(0), sample(1)};
    CHECK_NOTHROW(validate_knowledge(loaded, corpus));
    std::map<int, KnowledgeEntry> stray = loaded;
    stray[7] = {7, "h", "g", "llm"};
    CHECK_THROWS_AS(validate_knowledge(stray, corpus), InvalidArgumentError);
}
