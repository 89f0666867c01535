#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kqcoop {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    static BitVector unit(size_t n, size_t i) {
        BitVector v(n);
        v.set(i);
        return v;
    }

    size_t size() const { return n_; }
    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(size_t i, bool on = true) {
        uint64_t bit = uint64_t{1} << (i & 63);
        if (on) words_[i >> 6] |= bit;
        else words_[i >> 6] &= ~bit;
    }
    void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitVector& operator^=(const BitVector& o) {
        for (size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    bool any() const;
    size_t count() const;
    // lowest set index at or after `from`, or size() when none
    size_t next_set(size_t from = 0) const;
    std::vector<size_t> support() const;
    bool dot(const BitVector& o) const;

    std::vector<uint64_t>& words() { return words_; }
    const std::vector<uint64_t>& words() const { return words_; }
    std::string str() const;

private:
    size_t n_ = 0;
    std::vector<uint64_t> words_;
};

// Row-major, bit-packed. As a map, M sends F2^cols to F2^rows.
class MatrixF2 {
public:
    MatrixF2() = default;
    MatrixF2(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}

    static MatrixF2 identity(size_t n);
    static MatrixF2 from_rows(const std::vector<std::vector<int>>& rows);
    // matrix whose j-th column is cols[j]; all of length `rows`
    static MatrixF2 from_columns(size_t rows, const std::vector<BitVector>& cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool at(size_t i, size_t j) const { return data_[i].get(j); }
    void set(size_t i, size_t j, bool on = true) { data_[i].set(j, on); }
    const BitVector& row(size_t i) const { return data_[i]; }
    BitVector& row(size_t i) { return data_[i]; }

    MatrixF2 transpose() const;
    BitVector apply(const BitVector& v) const;
    bool is_zero() const;
    friend MatrixF2 operator*(const MatrixF2& a, const MatrixF2& b);
    friend bool operator==(const MatrixF2&, const MatrixF2&) = default;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<BitVector> data_;
};

// Incremental echelon basis. Each stored row has its lowest set bit as pivot and
// carries a tag recording which inserted vectors it is built from.
class Echelon {
public:
    Echelon(size_t n, size_t tag_size = 0) : n_(n), tag_size_(tag_size), pivot_row_(n, -1) {}

    size_t dim() const { return rows_.size(); }
    size_t ambient() const { return n_; }

    // Reduces v in place against the stored rows; the tags of the rows used are XORed into tag.
    void reduce(BitVector& v, BitVector* tag = nullptr) const;
    bool contains(BitVector v) const {
        reduce(v);
        return !v.any();
    }
    // Inserts v (reduced) with the given tag; returns false if v was already in the span.
    bool insert(BitVector v, BitVector tag = {});

    const std::vector<BitVector>& rows() const { return rows_; }

private:
    size_t n_, tag_size_;
    std::vector<int> pivot_row_;
    std::vector<BitVector> rows_;
    std::vector<BitVector> tags_;
};

size_t rank(const MatrixF2& m);
// Null space basis from the reduced row echelon form, one vector per free column in increasing order.
std::vector<BitVector> kernel_basis(const MatrixF2& m);

struct HomologyResult {
    size_t dimension = 0;
    std::vector<BitVector> representatives;
};

// H = ker B / im A with A incoming (n x p) and B outgoing (q x n). Throws if B*A != 0.
HomologyResult image_quotient(const MatrixF2& a, const MatrixF2& b);

// Same computation for maps given by column images. Used by the chart engine.
struct ImageKernel {
    std::vector<BitVector> kernel;  // in source coordinates
    size_t rank = 0;
};
ImageKernel image_kernel(size_t source_dim, size_t target_dim, const std::vector<BitVector>& images);

}  // namespace kqcoop
