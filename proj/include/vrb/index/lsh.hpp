#pragma once

#include "vrb/index.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

namespace vrb {

/// Random-hyperplane hashing. Each of n_bits seeded Gaussian hyperplanes
/// contributes one sign bit; candidates are ranked by Hamming distance
/// between code words whatever the declared metric, so scores are ascending
/// bit counts, not distances in the original space.
class LshIndex : public VectorIndex {
public:
    LshIndex(const IndexSpec& spec, const MatF& rows);

    SearchResult search(const VecF& query, int k) const override;

    int size() const override { return n_; }
    int dim() const override { return dim_; }

    std::vector<std::uint64_t> code(const VecF& x) const;
    int hamming(const std::vector<std::uint64_t>& code, int row) const;

    void save_payload(std::ostream& out) const override;
    static std::unique_ptr<LshIndex> load_payload(std::istream& in, const IndexSpec& spec);

private:
    LshIndex(const IndexSpec& spec, MatF planes, std::vector<std::uint64_t> codes, int n, int dim);

    int words() const { return static_cast<int>((spec_.lsh.n_bits + 63) / 64); }

    MatF planes_;                       // n_bits x dim
    std::vector<std::uint64_t> codes_;  // n * words, row-major
    int n_ = 0;
    int dim_ = 0;
};

}  // namespace vrb
