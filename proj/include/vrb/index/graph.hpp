#pragma once

#include "vrb/index/store.hpp"

#include <functional>
#include <queue>
#include <utility>
#include <vector>

namespace vrb::detail {

/// Helpers shared by the proximity-graph families. All candidate ordering
/// runs through the (cost, id) total order, so traversal is deterministic
/// for a given graph.

using CostId = std::pair<float, int>;

inline bool cost_id_pair_less(const CostId& a, const CostId& b) {
    return cost_id_less(a.first, a.second, b.first, b.second);
}

/// Best-first beam over one graph layer. `eps` are entry points with their
/// costs already attached. Expands the nearest unexpanded candidate until
/// no candidate can improve the pool; returns the pool sorted best-first,
/// at most ef entries.
inline std::vector<CostId> beam_search(int n,
                                       const std::function<const std::vector<int>&(int)>& neighbors,
                                       const std::function<float(int)>& cost_to_query,
                                       std::vector<CostId> eps, int ef) {
    const auto worse = cost_id_pair_less;  // max-heap: worst pool entry on top
    const auto better = [](const CostId& a, const CostId& b) { return cost_id_pair_less(b, a); };

    std::priority_queue<CostId, std::vector<CostId>, decltype(better)> candidates(better);
    std::priority_queue<CostId, std::vector<CostId>, decltype(worse)> pool(worse);
    std::vector<char> visited(static_cast<std::size_t>(n), 0);

    for (const auto& ep : eps) {
        if (visited[static_cast<std::size_t>(ep.second)]) continue;
        visited[static_cast<std::size_t>(ep.second)] = 1;
        candidates.push(ep);
        pool.push(ep);
        if (static_cast<int>(pool.size()) > ef) pool.pop();
    }

    while (!candidates.empty()) {
        const CostId cur = candidates.top();
        candidates.pop();
        if (static_cast<int>(pool.size()) == ef && cost_id_pair_less(pool.top(), cur)) break;
        for (int nb : neighbors(cur.second)) {
            if (visited[static_cast<std::size_t>(nb)]) continue;
            visited[static_cast<std::size_t>(nb)] = 1;
            const CostId cand{cost_to_query(nb), nb};
            if (static_cast<int>(pool.size()) < ef || cost_id_pair_less(cand, pool.top())) {
                candidates.push(cand);
                pool.push(cand);
                if (static_cast<int>(pool.size()) > ef) pool.pop();
            }
        }
    }

    std::vector<CostId> out;
    out.reserve(pool.size());
    while (!pool.empty()) {
        out.push_back(pool.top());
        pool.pop();
    }
    std::reverse(out.begin(), out.end());
    return out;
}

/// Occlusion rule used both by HNSW neighbor selection and the MRNG-style
/// NSG prune: walk candidates best-first and drop any candidate some kept
/// neighbor dominates (the kept neighbor is strictly closer to it than the
/// pruning center is). `cands` must be sorted best-first; `pair_cost` gives
/// the cost between two stored rows.
inline std::vector<int> occlusion_prune(const std::vector<CostId>& cands, int max_out,
                                        const std::function<float(int, int)>& pair_cost) {
    std::vector<int> kept;
    for (const auto& [cost, id] : cands) {
        if (static_cast<int>(kept.size()) >= max_out) break;
        bool dominated = false;
        for (int r : kept) {
            if (pair_cost(id, r) < cost) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(id);
    }
    return kept;
}

}  // namespace vrb::detail
