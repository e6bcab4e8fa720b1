#pragma once

#include "vrb/errors.hpp"
#include "vrb/metric.hpp"
#include "vrb/text.hpp"
#include "vrb/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace vrb {

struct HnswParams {
    int m = 16;
    int ef_construction = 200;
    int ef_search = 64;
};

struct IvfParams {
    int nlist = 0;   // 0: round(sqrt(N)), min 1
    int nprobe = 0;  // 0: min(8, nlist)
    int kmeans_iters = 20;
};

struct SqParams {
    int bits = 8;  // only 8 is supported
};

struct NsgParams {
    int knn_k = 32;
    int out_degree = 16;
};

struct LshParams {
    int n_bits = 64;
};

/// Family, metric, build parameters and RNG seed for one index. Only the
/// parameter block matching `family` is consulted.
struct IndexSpec {
    IndexFamily family = IndexFamily::Flat;
    Metric metric = Metric::L2;
    HnswParams hnsw;
    IvfParams ivf;
    SqParams sq;
    NsgParams nsg;
    LshParams lsh;
    std::uint64_t seed = 0;
};

/// Top-k result: ids deduplicated, scores aligned. Scores ascend for
/// L2/L1 and descend for IP; ties everywhere break by ascending id.
/// LSH is the exception: its scores are Hamming distances and ascend
/// regardless of the declared metric.
struct SearchResult {
    std::vector<int> ids;
    std::vector<float> scores;
};

/// A built, immutable index. Searches are safe to run concurrently.
/// Indexes whose payload is dense densify sparse queries before searching;
/// sparse-native indexes reject dense queries.
class VectorIndex {
public:
    virtual ~VectorIndex() = default;

    virtual SearchResult search(const VecF& query, int k) const = 0;
    virtual SearchResult search(const SpVecF& query, int k) const;

    /// Writes the family payload; the container header is the caller's job.
    virtual void save_payload(std::ostream& out) const = 0;

    virtual int size() const = 0;
    virtual int dim() const = 0;
    virtual bool sparse_storage() const { return false; }
    IndexFamily family() const { return spec_.family; }
    Metric metric() const { return spec_.metric; }
    const IndexSpec& spec() const { return spec_; }

protected:
    explicit VectorIndex(const IndexSpec& spec) : spec_(spec) {}
    void check_query(Eigen::Index got_dim, int k) const;

    IndexSpec spec_;
};

/// Builds an index over dense vectors (one row per document id).
std::unique_ptr<VectorIndex> build_index(const IndexSpec& spec, const MatF& vectors);

/// Builds an index over sparse vectors. Flat and IVFFlat search the rows
/// natively; the graph and quantization families densify them at build
/// time and keep serving sparse queries by densifying those too.
std::unique_ptr<VectorIndex> build_index(const IndexSpec& spec,
                                         const std::vector<SpVecF>& vectors, int dim);

/// Versioned binary container. Layout: magic "VRB1", format version u32,
/// spec block, payload. Loading rejects unknown magic or version.
void save_index(const std::string& path, const VectorIndex& index);
std::unique_ptr<VectorIndex> load_index(const std::string& path);

/// Validated copy of `spec` with data-dependent defaults resolved
/// (IVF nlist/nprobe). Throws BadParamsError on out-of-range parameters.
IndexSpec resolve_spec(const IndexSpec& spec, int n_vectors);

}  // namespace vrb
