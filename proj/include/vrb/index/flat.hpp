#pragma once

#include "vrb/index.hpp"
#include "vrb/index/io.hpp"
#include "vrb/index/store.hpp"

#include <memory>

namespace vrb {

/// Brute-force scan over every stored row. The reference the approximate
/// families are judged against.
template <typename Store>
class FlatIndexT : public VectorIndex {
public:
    FlatIndexT(const IndexSpec& spec, Store store)
        : VectorIndex(spec), store_(std::move(store)) {}

    SearchResult search(const VecF& query, int k) const override {
        if constexpr (Store::kSparse) {
            (void)query, (void)k;
            detail::reject_dense_query();
        } else {
            check_query(query.size(), k);
            return detail::scan_topk(store_, spec_.metric, query, k);
        }
    }

    SearchResult search(const SpVecF& query, int k) const override {
        if constexpr (Store::kSparse) {
            check_query(query.size(), k);
            return detail::scan_topk(store_, spec_.metric, query, k);
        } else {
            return VectorIndex::search(query, k);
        }
    }

    int size() const override { return store_.n(); }
    int dim() const override { return store_.dim(); }
    bool sparse_storage() const override { return Store::kSparse; }
    const Store& store() const { return store_; }

    void save_payload(std::ostream& out) const override;
    static std::unique_ptr<FlatIndexT> load_payload(std::istream& in, const IndexSpec& spec);

private:
    Store store_;
};

template <typename Store>
void FlatIndexT<Store>::save_payload(std::ostream& out) const {
    detail::save_store(out, store_);
}

template <typename Store>
std::unique_ptr<FlatIndexT<Store>> FlatIndexT<Store>::load_payload(std::istream& in,
                                                                   const IndexSpec& spec) {
    return std::make_unique<FlatIndexT>(spec, detail::load_store<Store>(in));
}

using FlatIndex = FlatIndexT<detail::DenseStore>;
using FlatSparseIndex = FlatIndexT<detail::SparseStore>;

}  // namespace vrb
