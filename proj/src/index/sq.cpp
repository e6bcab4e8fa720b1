#include "vrb/index/sq.hpp"

#include "vrb/index/io.hpp"
#include "vrb/index/store.hpp"

#include <cmath>

namespace vrb {

SqCodec SqCodec::fit(const MatF& rows) {
    SqCodec c;
    c.vmin_ = rows.colwise().minCoeff().transpose();
    c.vmax_ = rows.colwise().maxCoeff().transpose();
    c.scale_ = (c.vmax_ - c.vmin_) / 255.0f;
    return c;
}

std::uint8_t SqCodec::encode_one(float x, int d) const {
    const float range = vmax_(d) - vmin_(d);
    if (range <= 0.0f) return 0;
    const float q = std::round(255.0f * (x - vmin_(d)) / range);
    if (q <= 0.0f) return 0;
    if (q >= 255.0f) return 255;
    return static_cast<std::uint8_t>(q);
}

void SqCodec::decode_row(const std::uint8_t* codes, VecF& out) const {
    for (int d = 0; d < dim(); ++d) out(d) = decode_one(codes[d], d);
}

void SqCodec::save(std::ostream& out) const {
    detail::put_vec(out, vmin_);
    detail::put_vec(out, vmax_);
}

SqCodec SqCodec::load(std::istream& in) {
    SqCodec c;
    c.vmin_ = detail::get_vec(in);
    c.vmax_ = detail::get_vec(in);
    if (c.vmin_.size() != c.vmax_.size()) throw PersistError("quantizer bound sizes disagree");
    c.scale_ = (c.vmax_ - c.vmin_) / 255.0f;
    return c;
}

namespace {

std::vector<std::uint8_t> encode_rows(const SqCodec& codec, const MatF& rows) {
    std::vector<std::uint8_t> codes(static_cast<std::size_t>(rows.rows()) * rows.cols());
    std::size_t at = 0;
    for (Eigen::Index i = 0; i < rows.rows(); ++i)
        for (Eigen::Index d = 0; d < rows.cols(); ++d)
            codes[at++] = codec.encode_one(rows(i, d), static_cast<int>(d));
    return codes;
}

}  // namespace

SqIndex::SqIndex(const IndexSpec& spec, const MatF& rows)
    : VectorIndex(spec),
      codec_(SqCodec::fit(rows)),
      codes_(encode_rows(codec_, rows)),
      n_(static_cast<int>(rows.rows())) {}

SqIndex::SqIndex(const IndexSpec& spec, SqCodec codec, std::vector<std::uint8_t> codes, int n)
    : VectorIndex(spec), codec_(std::move(codec)), codes_(std::move(codes)), n_(n) {}

SearchResult SqIndex::search(const VecF& query, int k) const {
    check_query(query.size(), k);
    detail::TopK top(k);
    VecF decoded(codec_.dim());
    for (int i = 0; i < n_; ++i) {
        codec_.decode_row(row_codes(i), decoded);
        top.offer(search_cost(spec_.metric, query, decoded), i);
    }
    return top.take(spec_.metric);
}

void SqIndex::save_payload(std::ostream& out) const {
    codec_.save(out);
    detail::put_i32(out, n_);
    detail::put_bytes(out, codes_.data(), codes_.size());
}

std::unique_ptr<SqIndex> SqIndex::load_payload(std::istream& in, const IndexSpec& spec) {
    auto codec = SqCodec::load(in);
    const int n = detail::get_count(in, "row count");
    std::vector<std::uint8_t> codes(static_cast<std::size_t>(n) * codec.dim());
    detail::get_bytes(in, codes.data(), codes.size());
    return std::unique_ptr<SqIndex>(new SqIndex(spec, std::move(codec), std::move(codes), n));
}

IvfSqIndex::IvfSqIndex(const IndexSpec& spec, const MatF& rows)
    : VectorIndex(spec),
      codec_(SqCodec::fit(rows)),
      codes_(encode_rows(codec_, rows)),
      n_(static_cast<int>(rows.rows())) {
    auto cl = detail::run_kmeans(detail::DenseStore(rows), spec_.ivf.nlist, spec_.ivf.kmeans_iters,
                                 spec_.seed);
    centroids_ = std::move(cl.centroids);
    lists_ = std::move(cl.lists);
}

IvfSqIndex::IvfSqIndex(const IndexSpec& spec, SqCodec codec, std::vector<std::uint8_t> codes, int n,
                       MatF centroids, std::vector<std::vector<int>> lists)
    : VectorIndex(spec),
      codec_(std::move(codec)),
      codes_(std::move(codes)),
      n_(n),
      centroids_(std::move(centroids)),
      lists_(std::move(lists)) {}

SearchResult IvfSqIndex::search(const VecF& query, int k) const {
    check_query(query.size(), k);
    detail::TopK top(k);
    VecF decoded(codec_.dim());
    for (int c : detail::probe_order(centroids_, spec_.metric, query, spec_.ivf.nprobe)) {
        for (int i : lists_[c]) {
            codec_.decode_row(row_codes(i), decoded);
            top.offer(search_cost(spec_.metric, query, decoded), i);
        }
    }
    return top.take(spec_.metric);
}

void IvfSqIndex::save_payload(std::ostream& out) const {
    codec_.save(out);
    detail::put_i32(out, n_);
    detail::put_bytes(out, codes_.data(), codes_.size());
    detail::put_mat(out, centroids_);
    detail::put_int_lists(out, lists_);
}

std::unique_ptr<IvfSqIndex> IvfSqIndex::load_payload(std::istream& in, const IndexSpec& spec) {
    auto codec = SqCodec::load(in);
    const int n = detail::get_count(in, "row count");
    std::vector<std::uint8_t> codes(static_cast<std::size_t>(n) * codec.dim());
    detail::get_bytes(in, codes.data(), codes.size());
    auto centroids = detail::get_mat(in);
    auto lists = detail::get_int_lists(in);
    for (const auto& lst : lists)
        for (int v : lst)
            if (v < 0 || v >= n) throw PersistError("list member out of range");
    return std::unique_ptr<IvfSqIndex>(new IvfSqIndex(spec, std::move(codec), std::move(codes), n,
                                                      std::move(centroids), std::move(lists)));
}

}  // namespace vrb
