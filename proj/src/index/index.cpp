#include "vrb/index.hpp"

#include "vrb/index/flat.hpp"
#include "vrb/index/hnsw.hpp"
#include "vrb/index/io.hpp"
#include "vrb/index/ivf.hpp"
#include "vrb/index/lsh.hpp"
#include "vrb/index/nsg.hpp"
#include "vrb/index/sq.hpp"

#include <cmath>
#include <fstream>

namespace vrb {

namespace {

constexpr char kMagic[4] = {'V', 'R', 'B', '1'};
constexpr std::uint32_t kFormatVersion = 1;

void check_ivf(const IndexSpec& s, int n_vectors) {
    if (s.ivf.nlist < 1) throw BadParamsError("nlist must be at least 1");
    if (s.ivf.nlist > n_vectors)
        throw BadParamsError("nlist " + std::to_string(s.ivf.nlist) + " exceeds the " +
                             std::to_string(n_vectors) + " stored vectors");
    if (s.ivf.nprobe < 1 || s.ivf.nprobe > s.ivf.nlist)
        throw BadParamsError("nprobe must be between 1 and nlist");
    if (s.ivf.kmeans_iters < 0) throw BadParamsError("kmeans_iters must not be negative");
}

void check_sq(const IndexSpec& s) {
    if (s.sq.bits != 8) throw BadParamsError("only 8-bit scalar quantization is supported");
}

MatF densify(const std::vector<SpVecF>& vectors, int dim) {
    MatF dense = MatF::Zero(static_cast<Eigen::Index>(vectors.size()), dim);
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (SpVecF::InnerIterator it(vectors[i]); it; ++it)
            dense(static_cast<Eigen::Index>(i), it.index()) = it.value();
    return dense;
}

}  // namespace

SearchResult VectorIndex::search(const SpVecF& query, int k) const {
    return search(VecF(query), k);
}

void VectorIndex::check_query(Eigen::Index got_dim, int k) const {
    if (k < 1) throw InvalidArgumentError("k must be at least 1");
    if (static_cast<int>(got_dim) != dim())
        throw DimensionMismatchError("query dimension " + std::to_string(got_dim) +
                                     " does not match index dimension " + std::to_string(dim()));
}

IndexSpec resolve_spec(const IndexSpec& spec, int n_vectors) {
    IndexSpec s = spec;
    switch (s.family) {
        case IndexFamily::Flat:
            break;
        case IndexFamily::HNSW:
            if (s.hnsw.m < 2) throw BadParamsError("HNSW m must be at least 2");
            if (s.hnsw.ef_construction < 1 || s.hnsw.ef_search < 1)
                throw BadParamsError("HNSW ef values must be at least 1");
            break;
        case IndexFamily::IVFFlat:
        case IndexFamily::IVFSQ:
            if (s.ivf.nlist == 0)
                s.ivf.nlist = std::max(
                    1, static_cast<int>(std::lround(std::sqrt(double(n_vectors)))));
            if (s.ivf.nprobe == 0 && s.ivf.nlist >= 1) s.ivf.nprobe = std::min(8, s.ivf.nlist);
            check_ivf(s, n_vectors);
            if (s.family == IndexFamily::IVFSQ) check_sq(s);
            break;
        case IndexFamily::SQ:
            check_sq(s);
            break;
        case IndexFamily::NSG:
            if (s.nsg.knn_k < 1) throw BadParamsError("NSG knn_k must be at least 1");
            if (s.nsg.out_degree < 1) throw BadParamsError("NSG out_degree must be at least 1");
            break;
        case IndexFamily::LSH:
            if (s.lsh.n_bits < 1) throw BadParamsError("LSH n_bits must be at least 1");
            break;
    }
    return s;
}

std::unique_ptr<VectorIndex> build_index(const IndexSpec& spec, const MatF& vectors) {
    if (vectors.rows() == 0) throw EmptyInputError();
    if (vectors.cols() == 0) throw InvalidArgumentError("vectors must have at least one dimension");
    const IndexSpec s = resolve_spec(spec, static_cast<int>(vectors.rows()));
    switch (s.family) {
        case IndexFamily::Flat:
            return std::make_unique<FlatIndex>(s, detail::DenseStore(vectors));
        case IndexFamily::HNSW:
            return std::make_unique<HnswIndex>(s, vectors);
        case IndexFamily::IVFFlat:
            return std::make_unique<IvfFlatIndex>(s, detail::DenseStore(vectors));
        case IndexFamily::SQ:
            return std::make_unique<SqIndex>(s, vectors);
        case IndexFamily::IVFSQ:
            return std::make_unique<IvfSqIndex>(s, vectors);
        case IndexFamily::NSG:
            return std::make_unique<NsgIndex>(s, vectors);
        case IndexFamily::LSH:
            return std::make_unique<LshIndex>(s, vectors);
    }
    throw InvalidArgumentError("bad index family");
}

std::unique_ptr<VectorIndex> build_index(const IndexSpec& spec,
                                         const std::vector<SpVecF>& vectors, int dim) {
    if (vectors.empty()) throw EmptyInputError();
    if (dim < 1) throw InvalidArgumentError("vectors must have at least one dimension");
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != dim)
            throw DimensionMismatchError("sparse vector dimension " + std::to_string(v.size()) +
                                         " does not match " + std::to_string(dim));
    const IndexSpec s = resolve_spec(spec, static_cast<int>(vectors.size()));
    switch (s.family) {
        case IndexFamily::Flat:
            return std::make_unique<FlatSparseIndex>(s, detail::SparseStore(vectors, dim));
        case IndexFamily::IVFFlat:
            return std::make_unique<IvfFlatSparseIndex>(s, detail::SparseStore(vectors, dim));
        default:
            return build_index(s, densify(vectors, dim));
    }
}

void save_index(const std::string& path, const VectorIndex& index) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");

    const IndexSpec& s = index.spec();
    detail::put_bytes(out, kMagic, 4);
    detail::put_u32(out, kFormatVersion);
    detail::put_u8(out, static_cast<std::uint8_t>(s.family));
    detail::put_u8(out, static_cast<std::uint8_t>(s.metric));
    detail::put_u8(out, index.sparse_storage() ? 1 : 0);
    detail::put_u8(out, 0);
    detail::put_u64(out, s.seed);
    detail::put_i32(out, s.hnsw.m);
    detail::put_i32(out, s.hnsw.ef_construction);
    detail::put_i32(out, s.hnsw.ef_search);
    detail::put_i32(out, s.ivf.nlist);
    detail::put_i32(out, s.ivf.nprobe);
    detail::put_i32(out, s.ivf.kmeans_iters);
    detail::put_i32(out, s.sq.bits);
    detail::put_i32(out, s.nsg.knn_k);
    detail::put_i32(out, s.nsg.out_degree);
    detail::put_i32(out, s.lsh.n_bits);
    index.save_payload(out);
    out.flush();
    if (!out) throw IoError("failed to write " + path);
}

std::unique_ptr<VectorIndex> load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    char magic[4];
    detail::get_bytes(in, magic, 4);
    if (!std::equal(magic, magic + 4, kMagic)) throw PersistError("not an index file (bad magic)");
    const std::uint32_t version = detail::get_u32(in);
    if (version != kFormatVersion)
        throw PersistError("unsupported index format version " + std::to_string(version));

    const std::uint8_t family_tag = detail::get_u8(in);
    const std::uint8_t metric_tag = detail::get_u8(in);
    const std::uint8_t sparse_tag = detail::get_u8(in);
    detail::get_u8(in);
    if (family_tag > static_cast<std::uint8_t>(IndexFamily::LSH))
        throw PersistError("unknown index family tag");
    if (metric_tag > static_cast<std::uint8_t>(Metric::IP)) throw PersistError("unknown metric tag");
    if (sparse_tag > 1) throw PersistError("unknown storage tag");

    IndexSpec s;
    s.family = static_cast<IndexFamily>(family_tag);
    s.metric = static_cast<Metric>(metric_tag);
    s.seed = detail::get_u64(in);
    s.hnsw.m = detail::get_i32(in);
    s.hnsw.ef_construction = detail::get_i32(in);
    s.hnsw.ef_search = detail::get_i32(in);
    s.ivf.nlist = detail::get_i32(in);
    s.ivf.nprobe = detail::get_i32(in);
    s.ivf.kmeans_iters = detail::get_i32(in);
    s.sq.bits = detail::get_i32(in);
    s.nsg.knn_k = detail::get_i32(in);
    s.nsg.out_degree = detail::get_i32(in);
    s.lsh.n_bits = detail::get_i32(in);

    const bool sparse = sparse_tag == 1;
    if (sparse && s.family != IndexFamily::Flat && s.family != IndexFamily::IVFFlat)
        throw PersistError("sparse storage is only valid for flat and ivfflat");

    std::unique_ptr<VectorIndex> index;
    switch (s.family) {
        case IndexFamily::Flat:
            index = sparse ? std::unique_ptr<VectorIndex>(FlatSparseIndex::load_payload(in, s))
                           : std::unique_ptr<VectorIndex>(FlatIndex::load_payload(in, s));
            break;
        case IndexFamily::HNSW:
            index = HnswIndex::load_payload(in, s);
            break;
        case IndexFamily::IVFFlat:
            index = sparse ? std::unique_ptr<VectorIndex>(IvfFlatSparseIndex::load_payload(in, s))
                           : std::unique_ptr<VectorIndex>(IvfFlatIndex::load_payload(in, s));
            break;
        case IndexFamily::SQ:
            index = SqIndex::load_payload(in, s);
            break;
        case IndexFamily::IVFSQ:
            index = IvfSqIndex::load_payload(in, s);
            break;
        case IndexFamily::NSG:
            index = NsgIndex::load_payload(in, s);
            break;
        case IndexFamily::LSH:
            index = LshIndex::load_payload(in, s);
            break;
    }
    if (!index) throw PersistError("unknown index family tag");
    if (in.peek() != std::ifstream::traits_type::eof())
        throw PersistError("trailing bytes after the index payload");
    return index;
}

}  // namespace vrb
