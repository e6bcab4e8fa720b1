#pragma once

#include "vrb/index/store.hpp"

#include <cstdint>
#include <vector>

namespace vrb::detail {

/// Seeded Lloyd clustering over the rows of a store. Assignment always uses
/// squared L2 whatever the index metric; the index applies its own metric
/// only when ranking centroids at probe time. Centroids lost during an
/// iteration are reseeded to the point farthest from its current centroid.
struct Clustering {
    MatF centroids;                       // nlist x dim
    std::vector<std::vector<int>> lists;  // per cluster, ascending row ids
};

Clustering run_kmeans(const DenseStore& store, int nlist, int iters, std::uint64_t seed);
Clustering run_kmeans(const SparseStore& store, int nlist, int iters, std::uint64_t seed);

/// The nprobe clusters whose centroids rank best against the query under
/// the index metric, best first, ties by ascending cluster id.
std::vector<int> probe_order(const MatF& centroids, Metric m, const VecF& q, int nprobe);

}  // namespace vrb::detail
