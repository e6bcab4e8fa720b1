#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstdint>
#include <string>

namespace vrb {

/// Dense column vector / row-major matrix aliases. The engine stores and
/// searches float32 vectors; the templated aliases keep the free functions
/// in metric.hpp usable with double fixtures in tests.
template <typename Scalar>
using DenseVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using DenseMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using SparseVec = Eigen::SparseVector<Scalar>;

using VecF = DenseVec<float>;
using MatF = DenseMat<float>;
using SpVecF = SparseVec<float>;

/// Distance space. L2 and L1 rank by ascending distance, IP by descending
/// similarity. L2 values are squared euclidean distances.
enum class Metric { L2, L1, IP };

enum class IndexFamily { Flat, HNSW, IVFFlat, SQ, IVFSQ, NSG, LSH };

/// Which vectorization arm produced the vectors an index holds.
enum class Arm { TfIdf, Embedding };

std::string to_string(Metric m);
std::string to_string(IndexFamily f);
std::string to_string(Arm a);

Metric metric_from_string(const std::string& s);
IndexFamily family_from_string(const std::string& s);
Arm arm_from_string(const std::string& s);

}  // namespace vrb
