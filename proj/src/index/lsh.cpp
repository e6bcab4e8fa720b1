#include "vrb/index/lsh.hpp"

#include "vrb/index/io.hpp"
#include "vrb/index/store.hpp"

#include <bit>
#include <random>

namespace vrb {

LshIndex::LshIndex(const IndexSpec& spec, const MatF& rows)
    : VectorIndex(spec), n_(static_cast<int>(rows.rows())), dim_(static_cast<int>(rows.cols())) {
    std::mt19937_64 rng(spec_.seed);
    std::normal_distribution<float> gauss(0.0f, 1.0f);
    planes_.resize(spec_.lsh.n_bits, dim_);
    for (Eigen::Index b = 0; b < planes_.rows(); ++b)
        for (Eigen::Index d = 0; d < planes_.cols(); ++d) planes_(b, d) = gauss(rng);

    codes_.resize(static_cast<std::size_t>(n_) * words());
    for (int i = 0; i < n_; ++i) {
        const auto c = code(rows.row(i).transpose());
        std::copy(c.begin(), c.end(), codes_.begin() + static_cast<std::size_t>(i) * words());
    }
}

LshIndex::LshIndex(const IndexSpec& spec, MatF planes, std::vector<std::uint64_t> codes, int n,
                   int dim)
    : VectorIndex(spec), planes_(std::move(planes)), codes_(std::move(codes)), n_(n), dim_(dim) {}

std::vector<std::uint64_t> LshIndex::code(const VecF& x) const {
    std::vector<std::uint64_t> out(words(), 0);
    for (int b = 0; b < spec_.lsh.n_bits; ++b)
        if (dot(planes_.row(b).transpose(), x) >= 0.0f)
            out[b / 64] |= std::uint64_t{1} << (b % 64);
    return out;
}

int LshIndex::hamming(const std::vector<std::uint64_t>& c, int row) const {
    const std::uint64_t* stored = codes_.data() + static_cast<std::size_t>(row) * words();
    int d = 0;
    for (int w = 0; w < words(); ++w) d += std::popcount(c[w] ^ stored[w]);
    return d;
}

SearchResult LshIndex::search(const VecF& query, int k) const {
    check_query(query.size(), k);
    const auto qc = code(query);
    detail::TopK top(k);
    for (int i = 0; i < n_; ++i) top.offer(static_cast<float>(hamming(qc, i)), i);

    // Scores stay Hamming distances: no metric mapping.
    SearchResult r;
    for (const auto& [cost, id] : top.take_pairs()) {
        r.ids.push_back(id);
        r.scores.push_back(cost);
    }
    return r;
}

void LshIndex::save_payload(std::ostream& out) const {
    detail::put_mat(out, planes_);
    detail::put_i32(out, n_);
    detail::put_i32(out, dim_);
    for (std::uint64_t w : codes_) detail::put_u64(out, w);
}

std::unique_ptr<LshIndex> LshIndex::load_payload(std::istream& in, const IndexSpec& spec) {
    auto planes = detail::get_mat(in);
    const int n = detail::get_count(in, "row count");
    const int dim = detail::get_count(in, "dimension");
    if (planes.rows() != spec.lsh.n_bits || planes.cols() != dim)
        throw PersistError("hyperplane shape disagrees with the stored parameters");
    auto idx = std::unique_ptr<LshIndex>(new LshIndex(spec, std::move(planes), {}, n, dim));
    idx->codes_.resize(static_cast<std::size_t>(n) * idx->words());
    for (auto& w : idx->codes_) w = detail::get_u64(in);
    return idx;
}

}  // namespace vrb
