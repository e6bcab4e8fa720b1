#include "vrb/embedding.hpp"

#include "vrb/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace vrb {

MatF load_embedding_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::string header;
    if (!std::getline(in, header)) throw ParseError(path + ": missing header line");
    long n = 0, d = 0;
    {
        std::istringstream hs(header);
        if (!(hs >> n >> d) || n < 0 || d <= 0)
            throw ParseError(path + ": header must be \"n d\"");
    }

    MatF vecs(n, d);
    std::vector<bool> seen(std::size_t(n), false);
    std::string line;
    std::size_t row_no = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++row_no;
        std::istringstream ls(line);
        long id = -1;
        if (!(ls >> id) || id < 0 || id >= n)
            throw ParseError(path + ": bad id on data row", row_no);
        if (seen[std::size_t(id)])
            throw ParseError(path + ": duplicate id " + std::to_string(id), row_no);
        float v = 0;
        long got = 0;
        while (ls >> v) {
            if (!std::isfinite(v))
                throw ParseError(path + ": non-finite component", row_no);
            if (got < d) vecs(id, got) = v;
            ++got;
        }
        if (got != d)
            throw DimensionMismatchError(path + ": row for id " + std::to_string(id) + " has " +
                                         std::to_string(got) + " values, expected " +
                                         std::to_string(d));
        seen[std::size_t(id)] = true;
    }
    for (long i = 0; i < n; ++i)
        if (!seen[std::size_t(i)]) throw MissingDocError(path, int(i));
    return vecs;
}

EmbeddingTable load_embeddings(const std::string& doc_path, const std::string& query_path) {
    EmbeddingTable t;
    t.docs = load_embedding_file(doc_path);
    t.queries = load_embedding_file(query_path);
    if (t.docs.cols() != t.queries.cols())
        throw DimensionMismatchError("document and query embeddings disagree on dimension (" +
                                     std::to_string(t.docs.cols()) + " vs " +
                                     std::to_string(t.queries.cols()) + ")");
    t.dim = int(t.docs.cols());
    return t;
}

void save_embedding_file(const std::string& path, const MatF& vectors) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << vectors.rows() << " " << vectors.cols() << "\n";
    char buf[48];
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
        out << i;
        for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
            // 9 significant digits round-trip any float32 exactly.
            std::snprintf(buf, sizeof buf, " %.9g", double(vectors(i, j)));
            out << buf;
        }
        out << "\n";
    }
}

}  // namespace vrb
