#include "vrb/index/kmeans.hpp"

#include <limits>
#include <numeric>
#include <random>

namespace vrb::detail {
namespace {

// Fills `out` with row i of the store as a dense vector.
void fetch_row(const DenseStore& s, int i, VecF& out) { out = s.rows().row(i).transpose(); }

void fetch_row(const SparseStore& s, int i, VecF& out) {
    out.setZero();
    for (SpVecF::InnerIterator it(s.rows()[i]); it; ++it) out(it.index()) = it.value();
}

template <typename Store>
Clustering lloyd(const Store& store, int nlist, int iters, std::uint64_t seed) {
    const int n = store.n();
    const int dim = store.dim();

    std::mt19937_64 rng(seed);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < nlist; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(rng))]);
    }

    MatF centroids(nlist, dim);
    VecF row(dim);
    for (int c = 0; c < nlist; ++c) {
        fetch_row(store, order[static_cast<std::size_t>(c)], row);
        centroids.row(c) = row.transpose();
    }

    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    std::vector<int> sizes(static_cast<std::size_t>(nlist), 0);

    auto assign_all = [&] {
        std::fill(sizes.begin(), sizes.end(), 0);
        for (int i = 0; i < n; ++i) {
            fetch_row(store, i, row);
            int best = 0;
            float best_cost = squared_l2(row, centroids.row(0).transpose());
            for (int c = 1; c < nlist; ++c) {
                const float cost = squared_l2(row, centroids.row(c).transpose());
                if (cost < best_cost) {
                    best_cost = cost;
                    best = c;
                }
            }
            assign[static_cast<std::size_t>(i)] = best;
            ++sizes[static_cast<std::size_t>(best)];
        }
    };

    using MatD = DenseMat<double>;
    for (int it = 0; it < iters; ++it) {
        assign_all();

        MatD sums = MatD::Zero(nlist, dim);
        for (int i = 0; i < n; ++i) {
            fetch_row(store, i, row);
            sums.row(assign[static_cast<std::size_t>(i)]) += row.transpose().cast<double>();
        }
        for (int c = 0; c < nlist; ++c)
            if (sizes[static_cast<std::size_t>(c)] > 0)
                centroids.row(c) =
                    (sums.row(c) / sizes[static_cast<std::size_t>(c)]).cast<float>();

        for (int c = 0; c < nlist; ++c) {
            if (sizes[static_cast<std::size_t>(c)] > 0) continue;
            // Reseed a lost centroid to the point worst represented by its
            // current centroid, skipping singleton clusters.
            int worst = -1;
            float worst_cost = -1.0f;
            for (int i = 0; i < n; ++i) {
                const int ci = assign[static_cast<std::size_t>(i)];
                if (sizes[static_cast<std::size_t>(ci)] <= 1) continue;
                fetch_row(store, i, row);
                const float cost = squared_l2(row, centroids.row(ci).transpose());
                if (cost > worst_cost) {
                    worst_cost = cost;
                    worst = i;
                }
            }
            if (worst < 0) continue;
            fetch_row(store, worst, row);
            centroids.row(c) = row.transpose();
            --sizes[static_cast<std::size_t>(assign[static_cast<std::size_t>(worst)])];
            assign[static_cast<std::size_t>(worst)] = c;
            ++sizes[static_cast<std::size_t>(c)];
        }
    }

    assign_all();

    Clustering out;
    out.centroids = std::move(centroids);
    out.lists.resize(static_cast<std::size_t>(nlist));
    for (int i = 0; i < n; ++i)
        out.lists[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])].push_back(i);
    return out;
}

}  // namespace

Clustering run_kmeans(const DenseStore& store, int nlist, int iters, std::uint64_t seed) {
    return lloyd(store, nlist, iters, seed);
}

Clustering run_kmeans(const SparseStore& store, int nlist, int iters, std::uint64_t seed) {
    return lloyd(store, nlist, iters, seed);
}

std::vector<int> probe_order(const MatF& centroids, Metric m, const VecF& q, int nprobe) {
    TopK top(nprobe);
    for (int c = 0; c < static_cast<int>(centroids.rows()); ++c)
        top.offer(search_cost(m, q, centroids.row(c).transpose()), c);
    std::vector<int> order;
    for (const auto& p : top.take_pairs()) order.push_back(p.second);
    return order;
}

}  // namespace vrb::detail
