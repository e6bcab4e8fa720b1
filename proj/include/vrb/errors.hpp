#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vrb {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : Error {
    using Error::Error;
};

/// Malformed record in an input file; `line` is the 1-based record number.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line_no = 0)
        : Error(line_no ? msg + " (line " + std::to_string(line_no) + ")" : msg),
          line(line_no) {}
    std::size_t line;
};

struct MissingColumnError : Error {
    explicit MissingColumnError(const std::string& col)
        : Error("missing column: " + col), column(col) {}
    std::string column;
};

struct EmptyCorpusError : Error {
    EmptyCorpusError() : Error("corpus has no data rows") {}
};

struct FeatureCountError : Error {
    FeatureCountError(std::size_t record, std::size_t count)
        : Error("prompt " + std::to_string(record) + " has " + std::to_string(count) +
                " features, expected 1..4"),
          index(record) {}
    std::size_t index;
};

struct EmptyVocabularyError : Error {
    EmptyVocabularyError() : Error("no document produced any token") {}
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct MissingDocError : Error {
    MissingDocError(const std::string& what_file, int missing_id)
        : Error(what_file + " lacks vector for id " + std::to_string(missing_id)),
          id(missing_id) {}
    int id;
};

struct InvalidArgumentError : Error {
    using Error::Error;
};

struct BadParamsError : Error {
    using Error::Error;
};

struct EmptyInputError : Error {
    using Error::Error;
    EmptyInputError() : Error("index build requires at least one vector") {}
};

struct MalformedResultsError : Error {
    using Error::Error;
};

struct ComponentOutOfRangeError : Error {
    using Error::Error;
};

struct NoKnowledgeError : Error {
    NoKnowledgeError() : Error("prompt assembly requires at least one knowledge entry") {}
};

struct MissingKnowledgeError : Error {
    explicit MissingKnowledgeError(int attraction_id)
        : Error("knowledge store has no entry for attraction " + std::to_string(attraction_id)),
          id(attraction_id) {}
    int id;
};

struct ExtractionFailedError : Error {
    explicit ExtractionFailedError(int attraction_id)
        : Error("knowledge extraction failed for attraction " + std::to_string(attraction_id)),
          id(attraction_id) {}
    int id;
};

struct ClientError : Error {
    using Error::Error;
};

struct ClientTimeoutError : ClientError {
    using ClientError::ClientError;
};

/// Bad magic, unsupported version, or truncated payload in an index container.
struct PersistError : Error {
    using Error::Error;
};

}  // namespace vrb
