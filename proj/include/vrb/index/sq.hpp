#pragma once

#include "vrb/index.hpp"
#include "vrb/index/kmeans.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

namespace vrb {

/// Per-dimension 8-bit scalar quantizer. Codes are
/// q = round(255 * (x - min) / (max - min)); a dimension with zero range
/// always codes to 0 and decodes to min.
class SqCodec {
public:
    SqCodec() = default;

    static SqCodec fit(const MatF& rows);

    std::uint8_t encode_one(float x, int d) const;
    float decode_one(std::uint8_t q, int d) const { return vmin_(d) + float(q) * scale_(d); }
    void decode_row(const std::uint8_t* codes, VecF& out) const;

    int dim() const { return static_cast<int>(vmin_.size()); }
    const VecF& vmin() const { return vmin_; }
    const VecF& vmax() const { return vmax_; }

    void save(std::ostream& out) const;
    static SqCodec load(std::istream& in);

private:
    VecF vmin_;
    VecF vmax_;
    VecF scale_;  // (max - min) / 255 per dimension
};

/// Flat scan over quantized rows: codes are decoded on the fly and ranked
/// with the same kernels the exact indexes use.
class SqIndex : public VectorIndex {
public:
    SqIndex(const IndexSpec& spec, const MatF& rows);

    SearchResult search(const VecF& query, int k) const override;

    int size() const override { return n_; }
    int dim() const override { return codec_.dim(); }
    const SqCodec& codec() const { return codec_; }

    void save_payload(std::ostream& out) const override;
    static std::unique_ptr<SqIndex> load_payload(std::istream& in, const IndexSpec& spec);

private:
    SqIndex(const IndexSpec& spec, SqCodec codec, std::vector<std::uint8_t> codes, int n);

    const std::uint8_t* row_codes(int i) const { return codes_.data() + std::size_t(i) * codec_.dim(); }

    SqCodec codec_;
    std::vector<std::uint8_t> codes_;  // n * dim, row-major
    int n_ = 0;
};

/// Inverted lists over quantized rows. Clustering runs on the raw vectors;
/// codes quantize the raw vectors too, not residuals.
class IvfSqIndex : public VectorIndex {
public:
    IvfSqIndex(const IndexSpec& spec, const MatF& rows);

    SearchResult search(const VecF& query, int k) const override;

    int size() const override { return n_; }
    int dim() const override { return codec_.dim(); }
    const SqCodec& codec() const { return codec_; }
    const std::vector<std::vector<int>>& lists() const { return lists_; }

    void save_payload(std::ostream& out) const override;
    static std::unique_ptr<IvfSqIndex> load_payload(std::istream& in, const IndexSpec& spec);

private:
    IvfSqIndex(const IndexSpec& spec, SqCodec codec, std::vector<std::uint8_t> codes, int n,
               MatF centroids, std::vector<std::vector<int>> lists);

    const std::uint8_t* row_codes(int i) const { return codes_.data() + std::size_t(i) * codec_.dim(); }

    SqCodec codec_;
    std::vector<std::uint8_t> codes_;
    int n_ = 0;
    MatF centroids_;
    std::vector<std::vector<int>> lists_;
};

}  // namespace vrb
