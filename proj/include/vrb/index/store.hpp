#pragma once

#include "vrb/index.hpp"
#include "vrb/metric.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace vrb::detail {

/// Row stores behind the scan-based indexes. Both expose the same surface;
/// only the query type differs, so the index templates stay metric-agnostic.

class DenseStore {
public:
    using Query = VecF;
    static constexpr bool kSparse = false;

    DenseStore() = default;
    explicit DenseStore(MatF rows) : rows_(std::move(rows)) {}

    int n() const { return static_cast<int>(rows_.rows()); }
    int dim() const { return static_cast<int>(rows_.cols()); }
    float cost(Metric m, const VecF& q, int i) const {
        return search_cost(m, q, rows_.row(i).transpose());
    }
    const MatF& rows() const { return rows_; }

private:
    MatF rows_;
};

class SparseStore {
public:
    using Query = SpVecF;
    static constexpr bool kSparse = true;

    SparseStore() = default;
    SparseStore(std::vector<SpVecF> rows, int dim) : rows_(std::move(rows)), dim_(dim) {}

    int n() const { return static_cast<int>(rows_.size()); }
    int dim() const { return dim_; }
    float cost(Metric m, const SpVecF& q, int i) const {
        return search_cost(m, q, rows_[i]);
    }
    const std::vector<SpVecF>& rows() const { return rows_; }

private:
    std::vector<SpVecF> rows_;
    int dim_ = 0;
};

/// Bounded collector for the k best candidates under the (cost, id) total
/// order. The order is strict on distinct ids, so the collected set does
/// not depend on offer order; that is what makes exhaustive probing match
/// a brute-force scan exactly.
class TopK {
public:
    explicit TopK(int k) : k_(k) {}

    void offer(float cost, int id) {
        if (k_ <= 0) return;
        if (static_cast<int>(heap_.size()) < k_) {
            heap_.emplace_back(cost, id);
            std::push_heap(heap_.begin(), heap_.end(), less);
        } else if (cost_id_less(cost, id, heap_.front().first, heap_.front().second)) {
            std::pop_heap(heap_.begin(), heap_.end(), less);
            heap_.back() = {cost, id};
            std::push_heap(heap_.begin(), heap_.end(), less);
        }
    }

    /// Drains into a SearchResult ordered best-first.
    SearchResult take(Metric m) {
        std::sort(heap_.begin(), heap_.end(), less);
        SearchResult r;
        r.ids.reserve(heap_.size());
        r.scores.reserve(heap_.size());
        for (const auto& [cost, id] : heap_) {
            r.ids.push_back(id);
            r.scores.push_back(score_from_cost(m, cost));
        }
        heap_.clear();
        return r;
    }

    /// Best-first (cost, id) pairs without the metric mapping.
    std::vector<std::pair<float, int>> take_pairs() {
        std::sort(heap_.begin(), heap_.end(), less);
        return std::move(heap_);
    }

private:
    static bool less(const std::pair<float, int>& a, const std::pair<float, int>& b) {
        return cost_id_less(a.first, a.second, b.first, b.second);
    }

    int k_;
    std::vector<std::pair<float, int>> heap_;
};

template <typename Store, typename Query>
SearchResult scan_topk(const Store& store, Metric m, const Query& q, int k) {
    TopK top(k);
    for (int i = 0; i < store.n(); ++i) top.offer(store.cost(m, q, i), i);
    return top.take(m);
}

[[noreturn]] inline void reject_dense_query() {
    throw DimensionMismatchError(
        "dense query against a sparse-storage index; transform the query instead");
}

}  // namespace vrb::detail
