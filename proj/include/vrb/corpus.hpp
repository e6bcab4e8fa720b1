#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace vrb {

/// One standardized viewpoint record. `id` is the stable row index assigned
/// at load time; ids are contiguous from 0 within a loaded corpus. The
/// free-form fields (distance, popularity, ticket_price) stay text because
/// nothing computes on them.
struct Attraction {
    int id = 0;
    std::string name;
    std::string province;
    std::string city;
    std::string district;
    std::string address;
    std::string distance;
    std::string popularity;
    std::string ticket_price;
    std::string description;
    std::string promotion;
};

/// External-knowledge record for one attraction: exactly two knowledge
/// fields, history and geography. `source` records how the entry was
/// produced ("llm" or "fallback") and is carried through the store file.
struct KnowledgeEntry {
    int attraction_id = 0;
    std::string history;
    std::string geography;
    std::string source = "llm";
};

struct Prompt {
    std::string text;
    std::vector<std::string> features;  // 1..4 entries, deduplicated
};

struct PromptSet {
    std::vector<Prompt> prompts;  // file order preserved
};

/// The 10 schema column names of the attraction CSV, in canonical order.
const std::vector<std::string>& attraction_columns();

/// Raw CSV records of a file (RFC-4180 quoting, '\r' tolerated). Used by
/// commands that read tabular inputs outside the attraction schema.
std::vector<std::vector<std::string>> read_csv_rows(const std::string& path);

/// Quotes one CSV field if it needs quoting.
std::string csv_escape(const std::string& field);

/// Loads the attraction CSV (UTF-8, quoted fields permitted, header
/// matched by name in any order). Ids are assigned in row order from 0.
/// Throws MissingColumnError, EmptyCorpusError, ParseError (wrong field
/// count, reported with the record number), IoError.
std::vector<Attraction> load_attractions(const std::string& path);

/// Writes a corpus back out in canonical column order. Loading the result
/// reproduces the records field for field.
void save_attractions(const std::string& path, const std::vector<Attraction>& corpus);

/// One entry per line; blank lines and lines starting with '#' ignored;
/// entries trimmed and deduplicated.
std::set<std::string> load_stopwords(const std::string& path);

/// JSON array of {"text": str, "features": [str]}. Feature lists are
/// deduplicated (first occurrence kept), then required to hold 1..4
/// non-empty strings. Throws FeatureCountError with the record index.
PromptSet load_prompts(const std::string& path);
void save_prompts(const std::string& path, const PromptSet& prompts);

/// Knowledge store file: JSON array of
/// {"attraction_id": int, "history": str, "geography": str} (plus an
/// optional "source" tag).
std::map<int, KnowledgeEntry> load_knowledge(const std::string& path);
void save_knowledge(const std::string& path, const std::map<int, KnowledgeEntry>& store);

/// Checks that every entry's attraction_id refers to a loaded Attraction.
/// Throws MissingKnowledgeError-style InvalidArgumentError on violation.
void validate_knowledge(const std::map<int, KnowledgeEntry>& store,
                        const std::vector<Attraction>& corpus);

}  // namespace vrb
