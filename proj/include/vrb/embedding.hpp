#pragma once

#include "vrb/types.hpp"

#include <string>

namespace vrb {

/// Precomputed dense vectors standing in for the BERT arm: one row per
/// document id and one per query (prompt) id, all of dimension `dim`.
struct EmbeddingTable {
    int dim = 0;
    MatF docs;     // row i = document id i
    MatF queries;  // row i = prompt index i
};

/// Reads one embedding file: first line "n d", then n lines "id v1 ... vd".
/// Ids may come in any order but must cover 0..n-1 exactly; every component
/// must be finite. Throws DimensionMismatchError on a wrong-length row,
/// MissingDocError on a hole, ParseError otherwise.
MatF load_embedding_file(const std::string& path);

/// Loads the document and query tables and checks they share one dimension.
EmbeddingTable load_embeddings(const std::string& doc_path, const std::string& query_path);

void save_embedding_file(const std::string& path, const MatF& vectors);

}  // namespace vrb
