#pragma once

#include "vrb/index.hpp"

#include <iosfwd>
#include <memory>
#include <vector>

namespace vrb {

/// Layered small-world graph. Node levels are sampled geometrically from
/// spec.seed; construction links each node to neighbors chosen by the
/// occlusion heuristic, capped at M per upper layer and 2M on layer 0.
class HnswIndex : public VectorIndex {
public:
    HnswIndex(const IndexSpec& spec, MatF rows);

    SearchResult search(const VecF& query, int k) const override;

    int size() const override { return static_cast<int>(rows_.rows()); }
    int dim() const override { return static_cast<int>(rows_.cols()); }

    int max_level() const { return max_level_; }
    int entry_point() const { return entry_; }
    int node_level(int node) const { return static_cast<int>(links_[node].size()) - 1; }
    const std::vector<int>& neighbors(int node, int level) const { return links_[node][level]; }

    void save_payload(std::ostream& out) const override;
    static std::unique_ptr<HnswIndex> load_payload(std::istream& in, const IndexSpec& spec);

private:
    struct Loaded {};
    HnswIndex(Loaded, const IndexSpec& spec, MatF rows);

    float pair_cost(int a, int b) const;
    std::vector<std::pair<float, int>> layer_pool(const VecF& q,
                                                  std::vector<std::pair<float, int>> eps, int ef,
                                                  int level) const;
    void insert(int node, int level);
    void shrink(int node, int level);
    int max_degree(int level) const;

    MatF rows_;
    std::vector<std::vector<std::vector<int>>> links_;  // [node][level] -> neighbor ids
    int entry_ = 0;
    int max_level_ = 0;
};

}  // namespace vrb
