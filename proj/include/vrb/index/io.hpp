#pragma once

#include "vrb/errors.hpp"
#include "vrb/index/store.hpp"

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>

namespace vrb::detail {

/// Little-endian primitives for the index container. Reads throw
/// PersistError on truncation, so loaders can stay linear.

inline void put_bytes(std::ostream& out, const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

inline void get_bytes(std::istream& in, void* p, std::size_t n) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) throw PersistError("truncated index file");
}

inline void put_u8(std::ostream& out, std::uint8_t v) { put_bytes(out, &v, 1); }

inline void put_u32(std::ostream& out, std::uint32_t v) {
    const std::uint8_t b[4] = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                               static_cast<std::uint8_t>(v >> 16),
                               static_cast<std::uint8_t>(v >> 24)};
    put_bytes(out, b, 4);
}

inline void put_u64(std::ostream& out, std::uint64_t v) {
    put_u32(out, static_cast<std::uint32_t>(v));
    put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

inline void put_i32(std::ostream& out, std::int32_t v) {
    put_u32(out, static_cast<std::uint32_t>(v));
}

inline void put_f32(std::ostream& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

inline std::uint8_t get_u8(std::istream& in) {
    std::uint8_t v;
    get_bytes(in, &v, 1);
    return v;
}

inline std::uint32_t get_u32(std::istream& in) {
    std::uint8_t b[4];
    get_bytes(in, b, 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline std::uint64_t get_u64(std::istream& in) {
    const std::uint64_t lo = get_u32(in);
    const std::uint64_t hi = get_u32(in);
    return lo | (hi << 32);
}

inline std::int32_t get_i32(std::istream& in) { return static_cast<std::int32_t>(get_u32(in)); }

inline float get_f32(std::istream& in) { return std::bit_cast<float>(get_u32(in)); }

inline std::int32_t get_count(std::istream& in, const char* what) {
    const std::int32_t v = get_i32(in);
    if (v < 0) throw PersistError(std::string("negative ") + what + " in index file");
    return v;
}

inline void put_vec(std::ostream& out, const VecF& v) {
    put_i32(out, static_cast<std::int32_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) put_f32(out, v(i));
}

inline VecF get_vec(std::istream& in) {
    const std::int32_t n = get_count(in, "vector length");
    VecF v(n);
    for (std::int32_t i = 0; i < n; ++i) v(i) = get_f32(in);
    return v;
}

inline void put_mat(std::ostream& out, const MatF& m) {
    put_i32(out, static_cast<std::int32_t>(m.rows()));
    put_i32(out, static_cast<std::int32_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) put_f32(out, m(r, c));
}

inline MatF get_mat(std::istream& in) {
    const std::int32_t rows = get_count(in, "row count");
    const std::int32_t cols = get_count(in, "column count");
    MatF m(rows, cols);
    for (std::int32_t r = 0; r < rows; ++r)
        for (std::int32_t c = 0; c < cols; ++c) m(r, c) = get_f32(in);
    return m;
}

inline void put_int_lists(std::ostream& out, const std::vector<std::vector<int>>& lists) {
    put_i32(out, static_cast<std::int32_t>(lists.size()));
    for (const auto& l : lists) {
        put_i32(out, static_cast<std::int32_t>(l.size()));
        for (int v : l) put_i32(out, v);
    }
}

inline std::vector<std::vector<int>> get_int_lists(std::istream& in) {
    const std::int32_t n = get_count(in, "list count");
    std::vector<std::vector<int>> lists(static_cast<std::size_t>(n));
    for (auto& l : lists) {
        const std::int32_t len = get_count(in, "list length");
        l.resize(static_cast<std::size_t>(len));
        for (auto& v : l) v = get_i32(in);
    }
    return lists;
}

inline void save_store(std::ostream& out, const DenseStore& s) { put_mat(out, s.rows()); }

inline void save_store(std::ostream& out, const SparseStore& s) {
    put_i32(out, s.n());
    put_i32(out, s.dim());
    for (const auto& row : s.rows()) {
        put_i32(out, static_cast<std::int32_t>(row.nonZeros()));
        for (SpVecF::InnerIterator it(row); it; ++it) {
            put_i32(out, static_cast<std::int32_t>(it.index()));
            put_f32(out, it.value());
        }
    }
}

template <typename Store>
Store load_store(std::istream& in);

template <>
inline DenseStore load_store<DenseStore>(std::istream& in) {
    return DenseStore(get_mat(in));
}

template <>
inline SparseStore load_store<SparseStore>(std::istream& in) {
    const std::int32_t n = get_count(in, "row count");
    const std::int32_t dim = get_count(in, "dimension");
    std::vector<SpVecF> rows(static_cast<std::size_t>(n));
    for (auto& row : rows) {
        row.resize(dim);
        const std::int32_t nnz = get_count(in, "nonzero count");
        row.reserve(nnz);
        std::int32_t last = -1;
        for (std::int32_t j = 0; j < nnz; ++j) {
            const std::int32_t idx = get_i32(in);
            if (idx <= last || idx >= dim)
                throw PersistError("sparse indices out of range or unordered");
            last = idx;
            const float val = get_f32(in);
            row.insertBack(idx) = val;
        }
    }
    return SparseStore(std::move(rows), dim);
}

}  // namespace vrb::detail
