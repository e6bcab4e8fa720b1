#pragma once

#include "vrb/index.hpp"

#include <iosfwd>
#include <memory>
#include <vector>

namespace vrb {

/// Navigating spreading-out graph over an exact kNN graph. Each node's
/// knn_k nearest neighbors are pruned MRNG-style to out_degree; extra
/// edges are appended afterwards until every node is reachable from the
/// medoid, which is also where every search starts.
class NsgIndex : public VectorIndex {
public:
    NsgIndex(const IndexSpec& spec, MatF rows);

    SearchResult search(const VecF& query, int k) const override;

    int size() const override { return static_cast<int>(rows_.rows()); }
    int dim() const override { return static_cast<int>(rows_.cols()); }

    int medoid() const { return medoid_; }
    const std::vector<std::vector<int>>& graph() const { return out_; }

    void save_payload(std::ostream& out) const override;
    static std::unique_ptr<NsgIndex> load_payload(std::istream& in, const IndexSpec& spec);

private:
    struct Loaded {};
    NsgIndex(Loaded, const IndexSpec& spec, MatF rows);

    float pair_cost(int a, int b) const;
    std::vector<char> reachable() const;

    MatF rows_;
    std::vector<std::vector<int>> out_;
    int medoid_ = 0;
};

}  // namespace vrb
