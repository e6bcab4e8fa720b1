#include "vrb/index/hnsw.hpp"

#include "vrb/index/graph.hpp"
#include "vrb/index/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace vrb {

namespace {

// Levels above this would need ~e^30 nodes to occur by chance.
constexpr int kMaxLevel = 30;

}  // namespace

HnswIndex::HnswIndex(const IndexSpec& spec, MatF rows)
    : VectorIndex(spec), rows_(std::move(rows)) {
    const int n = static_cast<int>(rows_.rows());
    links_.resize(static_cast<std::size_t>(n));

    const double ml = 1.0 / std::log(static_cast<double>(spec_.hnsw.m));
    std::mt19937_64 rng(spec_.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    for (int i = 0; i < n; ++i) {
        double u = u01(rng);
        if (u <= 0.0) u = std::numeric_limits<double>::min();
        const int level = std::min(static_cast<int>(-std::log(u) * ml), kMaxLevel);
        links_[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(level) + 1);
        if (i == 0) {
            entry_ = 0;
            max_level_ = level;
            continue;
        }
        insert(i, level);
        if (level > max_level_) {
            max_level_ = level;
            entry_ = i;
        }
    }
}

HnswIndex::HnswIndex(Loaded, const IndexSpec& spec, MatF rows)
    : VectorIndex(spec), rows_(std::move(rows)) {}

float HnswIndex::pair_cost(int a, int b) const {
    return search_cost(spec_.metric, rows_.row(a).transpose(), rows_.row(b).transpose());
}

int HnswIndex::max_degree(int level) const {
    return level == 0 ? 2 * spec_.hnsw.m : spec_.hnsw.m;
}

std::vector<std::pair<float, int>> HnswIndex::layer_pool(const VecF& q,
                                                         std::vector<std::pair<float, int>> eps,
                                                         int ef, int level) const {
    return detail::beam_search(
        static_cast<int>(rows_.rows()),
        [&](int v) -> const std::vector<int>& {
            return links_[static_cast<std::size_t>(v)][static_cast<std::size_t>(level)];
        },
        [&](int v) { return search_cost(spec_.metric, q, rows_.row(v).transpose()); }, std::move(eps),
        ef);
}

void HnswIndex::insert(int node, int level) {
    const VecF q = rows_.row(node).transpose();
    std::vector<std::pair<float, int>> eps{
        {search_cost(spec_.metric, q, rows_.row(entry_).transpose()), entry_}};

    for (int lc = max_level_; lc > level; --lc) eps = layer_pool(q, std::move(eps), 1, lc);

    const auto pair_cost_fn = [this](int a, int b) { return pair_cost(a, b); };
    for (int lc = std::min(level, max_level_); lc >= 0; --lc) {
        auto pool = layer_pool(q, std::move(eps), spec_.hnsw.ef_construction, lc);
        const auto chosen = detail::occlusion_prune(pool, spec_.hnsw.m, pair_cost_fn);
        auto& node_links = links_[static_cast<std::size_t>(node)][static_cast<std::size_t>(lc)];
        node_links = chosen;
        for (int nb : chosen) {
            links_[static_cast<std::size_t>(nb)][static_cast<std::size_t>(lc)].push_back(node);
            if (static_cast<int>(links_[static_cast<std::size_t>(nb)][static_cast<std::size_t>(lc)]
                                     .size()) > max_degree(lc))
                shrink(nb, lc);
        }
        eps = std::move(pool);
    }
}

void HnswIndex::shrink(int node, int level) {
    auto& nb = links_[static_cast<std::size_t>(node)][static_cast<std::size_t>(level)];
    std::vector<std::pair<float, int>> cands;
    cands.reserve(nb.size());
    for (int v : nb) cands.emplace_back(pair_cost(node, v), v);
    std::sort(cands.begin(), cands.end(), detail::cost_id_pair_less);
    nb = detail::occlusion_prune(cands, max_degree(level),
                                 [this](int a, int b) { return pair_cost(a, b); });
}

SearchResult HnswIndex::search(const VecF& query, int k) const {
    check_query(query.size(), k);

    std::vector<std::pair<float, int>> eps{
        {search_cost(spec_.metric, query, rows_.row(entry_).transpose()), entry_}};
    for (int lc = max_level_; lc > 0; --lc) eps = layer_pool(query, std::move(eps), 1, lc);

    const int ef = std::max(spec_.hnsw.ef_search, k);
    auto pool = layer_pool(query, std::move(eps), ef, 0);
    if (static_cast<int>(pool.size()) > k) pool.resize(static_cast<std::size_t>(k));

    SearchResult r;
    for (const auto& [cost, id] : pool) {
        r.ids.push_back(id);
        r.scores.push_back(score_from_cost(spec_.metric, cost));
    }
    return r;
}

void HnswIndex::save_payload(std::ostream& out) const {
    detail::put_mat(out, rows_);
    detail::put_i32(out, entry_);
    detail::put_i32(out, max_level_);
    for (const auto& node : links_) {
        detail::put_i32(out, static_cast<std::int32_t>(node.size()) - 1);
        detail::put_int_lists(out, node);
    }
}

std::unique_ptr<HnswIndex> HnswIndex::load_payload(std::istream& in, const IndexSpec& spec) {
    auto rows = detail::get_mat(in);
    const int n = static_cast<int>(rows.rows());
    auto idx = std::unique_ptr<HnswIndex>(new HnswIndex(Loaded{}, spec, std::move(rows)));
    idx->entry_ = detail::get_i32(in);
    idx->max_level_ = detail::get_i32(in);
    if (n > 0 && (idx->entry_ < 0 || idx->entry_ >= n))
        throw PersistError("entry point out of range");
    idx->links_.resize(static_cast<std::size_t>(n));
    for (auto& node : idx->links_) {
        const int level = detail::get_i32(in);
        if (level < 0) throw PersistError("negative node level");
        node = detail::get_int_lists(in);
        if (static_cast<int>(node.size()) != level + 1)
            throw PersistError("node level disagrees with its link lists");
        for (const auto& lst : node)
            for (int v : lst)
                if (v < 0 || v >= n) throw PersistError("neighbor id out of range");
    }
    return idx;
}

}  // namespace vrb
