#include "vrb/corpus.hpp"

#include "vrb/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace vrb {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n\f\v");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n\f\v");
    return s.substr(a, b - a + 1);
}

// RFC-4180-style reader: quoted fields may hold commas, doubled quotes and
// newlines. Returns one record per row; `line_no` counts records.
std::vector<std::vector<std::string>> parse_csv(const std::string& content) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;

    const auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    const auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
        any = false;
    };

    for (std::size_t i = 0; i < content.size(); ++i) {
        char c = content[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"': quoted = true; any = true; break;
            case ',': end_field(); any = true; break;
            case '\r': break;
            case '\n':
                if (any || !field.empty() || !row.empty()) end_row();
                break;
            default: field.push_back(c); any = true; break;
        }
    }
    if (any || !field.empty() || !row.empty()) end_row();
    return rows;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

std::vector<std::vector<std::string>> read_csv_rows(const std::string& path) {
    return parse_csv(read_file(path));
}

std::string csv_escape(const std::string& field) { return csv_quote(field); }

const std::vector<std::string>& attraction_columns() {
    static const std::vector<std::string> cols = {
        "name",     "province",   "city",         "district",    "address",
        "distance", "popularity", "ticket_price", "description", "promotion"};
    return cols;
}

std::vector<Attraction> load_attractions(const std::string& path) {
    const auto rows = parse_csv(read_file(path));
    if (rows.empty()) throw EmptyCorpusError();

    const auto& header = rows.front();
    std::vector<int> col_of;  // canonical column -> position in file
    for (const auto& want : attraction_columns()) {
        auto it = std::find(header.begin(), header.end(), want);
        if (it == header.end()) throw MissingColumnError(want);
        col_of.push_back(int(it - header.begin()));
    }
    if (rows.size() == 1) throw EmptyCorpusError();

    std::vector<Attraction> corpus;
    corpus.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(row.size()),
                             r + 1);
        Attraction a;
        a.id = int(corpus.size());
        const auto f = [&](int c) { return row[std::size_t(col_of[std::size_t(c)])]; };
        a.name = f(0);
        a.province = f(1);
        a.city = f(2);
        a.district = f(3);
        a.address = f(4);
        a.distance = f(5);
        a.popularity = f(6);
        a.ticket_price = f(7);
        a.description = f(8);
        a.promotion = f(9);
        if (trim(a.name).empty() || trim(a.description).empty())
            throw ParseError("name and description must be non-empty", r + 1);
        corpus.push_back(std::move(a));
    }
    return corpus;
}

void save_attractions(const std::string& path, const std::vector<Attraction>& corpus) {
    std::ostringstream out;
    const auto& cols = attraction_columns();
    for (std::size_t c = 0; c < cols.size(); ++c)
        out << (c ? "," : "") << cols[c];
    out << "\n";
    for (const auto& a : corpus) {
        const std::string* fields[] = {&a.name,       &a.province,     &a.city,
                                       &a.district,   &a.address,      &a.distance,
                                       &a.popularity, &a.ticket_price, &a.description,
                                       &a.promotion};
        for (std::size_t c = 0; c < cols.size(); ++c)
            out << (c ? "," : "") << csv_quote(*fields[c]);
        out << "\n";
    }
    write_file(path, out.str());
}

std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        std::string w = trim(line);
        if (w.empty() || w[0] == '#') continue;
        words.insert(std::move(w));
    }
    return words;
}

PromptSet load_prompts(const std::string& path) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("prompt file: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("prompt file: expected a JSON array");

    PromptSet set;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& rec = doc[i];
        if (!rec.is_object() || !rec.contains("text") || !rec.contains("features") ||
            !rec["features"].is_array())
            throw ParseError("prompt record " + std::to_string(i) +
                             ": expected {\"text\", \"features\"}");
        Prompt p;
        p.text = rec["text"].get<std::string>();
        for (const auto& f : rec["features"]) {
            std::string s = f.get<std::string>();
            if (trim(s).empty())
                throw ParseError("prompt record " + std::to_string(i) + ": empty feature");
            if (std::find(p.features.begin(), p.features.end(), s) == p.features.end())
                p.features.push_back(std::move(s));
        }
        if (p.features.empty() || p.features.size() > 4)
            throw FeatureCountError(i, p.features.size());
        set.prompts.push_back(std::move(p));
    }
    return set;
}

void save_prompts(const std::string& path, const PromptSet& prompts) {
    ordered_json doc = ordered_json::array();
    for (const auto& p : prompts.prompts) {
        ordered_json rec;
        rec["text"] = p.text;
        rec["features"] = p.features;
        doc.push_back(std::move(rec));
    }
    write_file(path, doc.dump(2) + "\n");
}

std::map<int, KnowledgeEntry> load_knowledge(const std::string& path) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("knowledge store: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("knowledge store: expected a JSON array");

    std::map<int, KnowledgeEntry> store;
    for (const auto& rec : doc) {
        if (!rec.is_object() || !rec.contains("attraction_id") || !rec.contains("history") ||
            !rec.contains("geography"))
            throw ParseError("knowledge store: expected {attraction_id, history, geography}");
        KnowledgeEntry e;
        e.attraction_id = rec["attraction_id"].get<int>();
        e.history = rec["history"].get<std::string>();
        e.geography = rec["geography"].get<std::string>();
        if (rec.contains("source")) e.source = rec["source"].get<std::string>();
        store[e.attraction_id] = std::move(e);
    }
    return store;
}

void save_knowledge(const std::string& path, const std::map<int, KnowledgeEntry>& store) {
    ordered_json doc = ordered_json::array();
    for (const auto& [id, e] : store) {
        ordered_json rec;
        rec["attraction_id"] = id;
        rec["history"] = e.history;
        rec["geography"] = e.geography;
        rec["source"] = e.source;
        doc.push_back(std::move(rec));
    }
    write_file(path, doc.dump(2) + "\n");
}

void validate_knowledge(const std::map<int, KnowledgeEntry>& store,
                        const std::vector<Attraction>& corpus) {
    for (const auto& [id, e] : store) {
        (void)e;
        if (id < 0 || id >= int(corpus.size()))
            throw InvalidArgumentError("knowledge entry refers to unknown attraction " +
                                       std::to_string(id));
    }
}

}  // namespace vrb
