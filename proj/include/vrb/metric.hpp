#pragma once

#include "vrb/errors.hpp"
#include "vrb/types.hpp"

#include <cmath>

namespace vrb {

/// Distance kernels over Eigen expressions. Accumulation is coefficient-wise
/// in index order: the float result is reproducible across runs and across
/// independently written scan loops, which keeps tie-breaking exact.

namespace detail {

inline void check_same_size(Eigen::Index a, Eigen::Index b) {
    if (a != b)
        throw DimensionMismatchError("vector dimensions differ: " + std::to_string(a) +
                                     " vs " + std::to_string(b));
}

}  // namespace detail

template <typename A, typename B>
typename A::Scalar squared_l2(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    detail::check_same_size(a.size(), b.size());
    typename A::Scalar acc = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const typename A::Scalar d = a.coeff(i) - b.coeff(i);
        acc += d * d;
    }
    return acc;
}

template <typename A, typename B>
typename A::Scalar l1(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    detail::check_same_size(a.size(), b.size());
    typename A::Scalar acc = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        acc += std::abs(a.coeff(i) - b.coeff(i));
    return acc;
}

template <typename A, typename B>
typename A::Scalar dot(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    detail::check_same_size(a.size(), b.size());
    typename A::Scalar acc = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        acc += a.coeff(i) * b.coeff(i);
    return acc;
}

// Sparse-sparse variants walk the two ordered nonzero lists in one merge.

template <typename Scalar>
Scalar squared_l2(const SparseVec<Scalar>& a, const SparseVec<Scalar>& b) {
    detail::check_same_size(a.size(), b.size());
    Scalar acc = 0;
    typename SparseVec<Scalar>::InnerIterator ia(a), ib(b);
    while (ia || ib) {
        Scalar d;
        if (ia && (!ib || ia.index() < ib.index())) {
            d = ia.value();
            ++ia;
        } else if (ib && (!ia || ib.index() < ia.index())) {
            d = -ib.value();
            ++ib;
        } else {
            d = ia.value() - ib.value();
            ++ia;
            ++ib;
        }
        acc += d * d;
    }
    return acc;
}

template <typename Scalar>
Scalar l1(const SparseVec<Scalar>& a, const SparseVec<Scalar>& b) {
    detail::check_same_size(a.size(), b.size());
    Scalar acc = 0;
    typename SparseVec<Scalar>::InnerIterator ia(a), ib(b);
    while (ia || ib) {
        if (ia && (!ib || ia.index() < ib.index())) {
            acc += std::abs(ia.value());
            ++ia;
        } else if (ib && (!ia || ib.index() < ia.index())) {
            acc += std::abs(ib.value());
            ++ib;
        } else {
            acc += std::abs(ia.value() - ib.value());
            ++ia;
            ++ib;
        }
    }
    return acc;
}

template <typename Scalar>
Scalar dot(const SparseVec<Scalar>& a, const SparseVec<Scalar>& b) {
    detail::check_same_size(a.size(), b.size());
    Scalar acc = 0;
    typename SparseVec<Scalar>::InnerIterator ia(a), ib(b);
    while (ia && ib) {
        if (ia.index() < ib.index()) ++ia;
        else if (ib.index() < ia.index()) ++ib;
        else {
            acc += ia.value() * ib.value();
            ++ia;
            ++ib;
        }
    }
    return acc;
}

/// Runtime-dispatched distance. L2 returns the squared euclidean distance,
/// L1 the absolute-difference sum, IP the dot product. Dense pairs and
/// sparse pairs are both supported; mixed pairs are not part of the API.
template <typename A, typename B>
typename A::Scalar distance(Metric m, const Eigen::MatrixBase<A>& a,
                            const Eigen::MatrixBase<B>& b) {
    switch (m) {
        case Metric::L2: return squared_l2(a, b);
        case Metric::L1: return l1(a, b);
        case Metric::IP: return dot(a, b);
    }
    throw InvalidArgumentError("bad metric");
}

template <typename Scalar>
Scalar distance(Metric m, const SparseVec<Scalar>& a, const SparseVec<Scalar>& b) {
    switch (m) {
        case Metric::L2: return squared_l2(a, b);
        case Metric::L1: return l1(a, b);
        case Metric::IP: return dot(a, b);
    }
    throw InvalidArgumentError("bad metric");
}

/// Internal search cost: smaller is always better. For IP that is the
/// negated dot product; `score_from_cost` maps back to the reported score.
template <typename A, typename B>
typename A::Scalar search_cost(Metric m, const Eigen::MatrixBase<A>& a,
                               const Eigen::MatrixBase<B>& b) {
    auto d = distance(m, a, b);
    return m == Metric::IP ? -d : d;
}

template <typename Scalar>
Scalar search_cost(Metric m, const SparseVec<Scalar>& a, const SparseVec<Scalar>& b) {
    auto d = distance(m, a, b);
    return m == Metric::IP ? -d : d;
}

inline float score_from_cost(Metric m, float cost) {
    return m == Metric::IP ? -cost : cost;
}

/// Total order on scan candidates: by cost, then by ascending id.
inline bool cost_id_less(float cost_a, int id_a, float cost_b, int id_b) {
    return cost_a < cost_b || (cost_a == cost_b && id_a < id_b);
}

}  // namespace vrb
