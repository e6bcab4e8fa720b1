#include "vrb/index/nsg.hpp"

#include "vrb/index/graph.hpp"
#include "vrb/index/io.hpp"

#include <algorithm>
#include <deque>

namespace vrb {

namespace {

// Search pool floor: a deeper pool than k keeps recall stable for small k.
constexpr int kMinPool = 64;

}  // namespace

NsgIndex::NsgIndex(const IndexSpec& spec, MatF rows) : VectorIndex(spec), rows_(std::move(rows)) {
    const int n = static_cast<int>(rows_.rows());
    const int knn_k = std::min(spec_.nsg.knn_k, n - 1);
    const auto pair_cost_fn = [this](int a, int b) { return pair_cost(a, b); };

    // Medoid: the row ranking best against the coordinate mean.
    DenseVec<double> acc = DenseVec<double>::Zero(rows_.cols());
    for (int i = 0; i < n; ++i) acc += rows_.row(i).transpose().cast<double>();
    const VecF mean = (acc / n).cast<float>();
    float best_cost = search_cost(spec_.metric, mean, rows_.row(0).transpose());
    medoid_ = 0;
    for (int i = 1; i < n; ++i) {
        const float c = search_cost(spec_.metric, mean, rows_.row(i).transpose());
        if (c < best_cost) {
            best_cost = c;
            medoid_ = i;
        }
    }

    // Exact kNN of every node, pruned by the occlusion rule.
    out_.resize(n);
    for (int i = 0; i < n; ++i) {
        detail::TopK top(knn_k);
        for (int j = 0; j < n; ++j)
            if (j != i) top.offer(pair_cost(i, j), j);
        out_[i] = detail::occlusion_prune(top.take_pairs(), spec_.nsg.out_degree, pair_cost_fn);
    }

    // Reconnect anything the prune cut off from the medoid: repeatedly
    // attach the smallest unreachable id to its nearest reachable node.
    for (;;) {
        const auto seen = reachable();
        int orphan = -1;
        for (int i = 0; i < n; ++i)
            if (!seen[i]) {
                orphan = i;
                break;
            }
        if (orphan < 0) break;
        int anchor = -1;
        float anchor_cost = 0.0f;
        for (int i = 0; i < n; ++i) {
            if (!seen[i]) continue;
            const float c = pair_cost(orphan, i);
            if (anchor < 0 || cost_id_less(c, i, anchor_cost, anchor)) {
                anchor_cost = c;
                anchor = i;
            }
        }
        out_[anchor].push_back(orphan);
    }
}

NsgIndex::NsgIndex(Loaded, const IndexSpec& spec, MatF rows)
    : VectorIndex(spec), rows_(std::move(rows)) {}

float NsgIndex::pair_cost(int a, int b) const {
    return search_cost(spec_.metric, rows_.row(a).transpose(), rows_.row(b).transpose());
}

std::vector<char> NsgIndex::reachable() const {
    std::vector<char> seen(rows_.rows(), 0);
    std::deque<int> queue{medoid_};
    seen[medoid_] = 1;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int nb : out_[v])
            if (!seen[nb]) {
                seen[nb] = 1;
                queue.push_back(nb);
            }
    }
    return seen;
}

SearchResult NsgIndex::search(const VecF& query, int k) const {
    check_query(query.size(), k);

    std::vector<std::pair<float, int>> eps{
        {search_cost(spec_.metric, query, rows_.row(medoid_).transpose()), medoid_}};
    auto pool = detail::beam_search(
        static_cast<int>(rows_.rows()), [&](int v) -> const std::vector<int>& { return out_[v]; },
        [&](int v) { return search_cost(spec_.metric, query, rows_.row(v).transpose()); },
        std::move(eps), std::max(k, kMinPool));
    if (static_cast<int>(pool.size()) > k) pool.resize(k);

    SearchResult r;
    for (const auto& [cost, id] : pool) {
        r.ids.push_back(id);
        r.scores.push_back(score_from_cost(spec_.metric, cost));
    }
    return r;
}

void NsgIndex::save_payload(std::ostream& out) const {
    detail::put_mat(out, rows_);
    detail::put_i32(out, medoid_);
    detail::put_int_lists(out, out_);
}

std::unique_ptr<NsgIndex> NsgIndex::load_payload(std::istream& in, const IndexSpec& spec) {
    auto rows = detail::get_mat(in);
    const int n = static_cast<int>(rows.rows());
    auto idx = std::unique_ptr<NsgIndex>(new NsgIndex(Loaded{}, spec, std::move(rows)));
    idx->medoid_ = detail::get_i32(in);
    if (n > 0 && (idx->medoid_ < 0 || idx->medoid_ >= n))
        throw PersistError("medoid out of range");
    idx->out_ = detail::get_int_lists(in);
    if (static_cast<int>(idx->out_.size()) != n)
        throw PersistError("adjacency size disagrees with row count");
    for (const auto& lst : idx->out_)
        for (int v : lst)
            if (v < 0 || v >= n) throw PersistError("neighbor id out of range");
    return idx;
}

}  // namespace vrb
