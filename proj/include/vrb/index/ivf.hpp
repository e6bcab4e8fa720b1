#pragma once

#include "vrb/index.hpp"
#include "vrb/index/io.hpp"
#include "vrb/index/kmeans.hpp"
#include "vrb/index/store.hpp"

#include <memory>
#include <utility>

namespace vrb {

/// Inverted-file index: seeded k-means partitions the rows, a search scans
/// only the members of the nprobe best-ranked clusters. With nprobe=nlist
/// every row is offered to the same (cost, id) collector a Flat scan uses,
/// so results match Flat exactly.
template <typename Store>
class IvfFlatIndexT : public VectorIndex {
public:
    IvfFlatIndexT(const IndexSpec& spec, Store store)
        : VectorIndex(spec), store_(std::move(store)) {
        auto cl = detail::run_kmeans(store_, spec_.ivf.nlist, spec_.ivf.kmeans_iters, spec_.seed);
        centroids_ = std::move(cl.centroids);
        lists_ = std::move(cl.lists);
    }

    SearchResult search(const VecF& query, int k) const override {
        if constexpr (Store::kSparse) {
            (void)query, (void)k;
            detail::reject_dense_query();
        } else {
            check_query(query.size(), k);
            return probe_scan(query, query, k);
        }
    }

    SearchResult search(const SpVecF& query, int k) const override {
        if constexpr (Store::kSparse) {
            check_query(query.size(), k);
            return probe_scan(query, VecF(query), k);
        } else {
            return VectorIndex::search(query, k);
        }
    }

    int size() const override { return store_.n(); }
    int dim() const override { return store_.dim(); }
    bool sparse_storage() const override { return Store::kSparse; }
    const Store& store() const { return store_; }
    const MatF& centroids() const { return centroids_; }
    const std::vector<std::vector<int>>& lists() const { return lists_; }

    void save_payload(std::ostream& out) const override {
        detail::save_store(out, store_);
        detail::put_mat(out, centroids_);
        detail::put_int_lists(out, lists_);
    }

    static std::unique_ptr<IvfFlatIndexT> load_payload(std::istream& in, const IndexSpec& spec) {
        auto store = detail::load_store<Store>(in);
        auto centroids = detail::get_mat(in);
        auto lists = detail::get_int_lists(in);
        return std::unique_ptr<IvfFlatIndexT>(
            new IvfFlatIndexT(spec, std::move(store), std::move(centroids), std::move(lists)));
    }

private:
    IvfFlatIndexT(const IndexSpec& spec, Store store, MatF centroids,
                  std::vector<std::vector<int>> lists)
        : VectorIndex(spec),
          store_(std::move(store)),
          centroids_(std::move(centroids)),
          lists_(std::move(lists)) {}

    // Centroids are ranked against the dense view of the query; list members
    // are scored with the store's native arithmetic.
    template <typename Query>
    SearchResult probe_scan(const Query& q, const VecF& q_dense, int k) const {
        detail::TopK top(k);
        for (int c : detail::probe_order(centroids_, spec_.metric, q_dense, spec_.ivf.nprobe))
            for (int i : lists_[static_cast<std::size_t>(c)])
                top.offer(store_.cost(spec_.metric, q, i), i);
        return top.take(spec_.metric);
    }

    Store store_;
    MatF centroids_;
    std::vector<std::vector<int>> lists_;
};

using IvfFlatIndex = IvfFlatIndexT<detail::DenseStore>;
using IvfFlatSparseIndex = IvfFlatIndexT<detail::SparseStore>;

}  // namespace vrb
