#include "kqcoop/linalg_f2.hpp"

#include <bit>
#include <stdexcept>

namespace kqcoop {

bool BitVector::any() const {
    for (auto w : words_)
        if (w) return true;
    return false;
}

size_t BitVector::count() const {
    size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

size_t BitVector::next_set(size_t from) const {
    if (from >= n_) return n_;
    size_t k = from >> 6;
    uint64_t w = words_[k] & (~uint64_t{0} << (from & 63));
    while (true) {
        if (w) {
            size_t i = (k << 6) + std::countr_zero(w);
            return i < n_ ? i : n_;
        }
        if (++k >= words_.size()) return n_;
        w = words_[k];
    }
}

std::vector<size_t> BitVector::support() const {
    std::vector<size_t> out;
    for (size_t i = next_set(0); i < n_; i = next_set(i + 1)) out.push_back(i);
    return out;
}

bool BitVector::dot(const BitVector& o) const {
    uint64_t acc = 0;
    for (size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & o.words_[k];
    return std::popcount(acc) & 1;
}

std::string BitVector::str() const {
    std::string s(n_, '0');
    for (size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

MatrixF2 MatrixF2::identity(size_t n) {
    MatrixF2 m(n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

MatrixF2 MatrixF2::from_rows(const std::vector<std::vector<int>>& rows) {
    size_t c = rows.empty() ? 0 : rows[0].size();
    MatrixF2 m(rows.size(), c);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix");
        for (size_t j = 0; j < c; ++j)
            if (rows[i][j] & 1) m.set(i, j);
    }
    return m;
}

MatrixF2 MatrixF2::from_columns(size_t rows, const std::vector<BitVector>& cols) {
    MatrixF2 m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i : cols[j].support()) m.set(i, j);
    return m;
}

MatrixF2 MatrixF2::transpose() const {
    MatrixF2 t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j : data_[i].support()) t.set(j, i);
    return t;
}

BitVector MatrixF2::apply(const BitVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: size mismatch");
    BitVector out(rows_);
    for (size_t i = 0; i < rows_; ++i)
        if (data_[i].dot(v)) out.set(i);
    return out;
}

bool MatrixF2::is_zero() const {
    for (const auto& r : data_)
        if (r.any()) return false;
    return true;
}

MatrixF2 operator*(const MatrixF2& a, const MatrixF2& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: size mismatch");
    MatrixF2 out(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k : a.data_[i].support()) out.data_[i] ^= b.data_[k];
    return out;
}

void Echelon::reduce(BitVector& v, BitVector* tag) const {
    auto& words = v.words();
    for (size_t k = 0; k < words.size(); ++k) {
        uint64_t pending = words[k];
        while (pending) {
            size_t bit = std::countr_zero(pending);
            size_t i = (k << 6) + bit;
            pending &= pending - 1;
            int r = pivot_row_[i];
            if (r < 0) continue;
            v ^= rows_[r];
            if (tag && tag_size_) *tag ^= tags_[r];
            // rows only touch bits >= their pivot; rescan the rest of this word
            pending = words[k] & (bit == 63 ? 0 : (~uint64_t{0} << (bit + 1)));
        }
    }
}

bool Echelon::insert(BitVector v, BitVector tag) {
    if (tag_size_ && tag.size() != tag_size_) tag = BitVector(tag_size_);
    reduce(v, &tag);
    size_t p = v.next_set(0);
    if (p >= n_) return false;
    pivot_row_[p] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    if (tag_size_) tags_.push_back(std::move(tag));
    return true;
}

size_t rank(const MatrixF2& m) {
    Echelon e(m.cols());
    size_t r = 0;
    for (size_t i = 0; i < m.rows(); ++i)
        if (e.insert(m.row(i))) ++r;
    return r;
}

std::vector<BitVector> kernel_basis(const MatrixF2& m) {
    // reduced row echelon form, pivot = lowest column, ties broken by lowest row
    std::vector<BitVector> rows;
    for (size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    std::vector<size_t> pivot_cols;
    size_t next = 0;
    for (size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
        size_t found = rows.size();
        for (size_t r = next; r < rows.size(); ++r)
            if (rows[r].get(c)) {
                found = r;
                break;
            }
        if (found == rows.size()) continue;
        std::swap(rows[next], rows[found]);
        for (size_t r = 0; r < rows.size(); ++r)
            if (r != next && rows[r].get(c)) rows[r] ^= rows[next];
        pivot_cols.push_back(c);
        ++next;
    }
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<BitVector> out;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVector v(m.cols());
        v.set(f);
        for (size_t k = 0; k < pivot_cols.size(); ++k)
            if (rows[k].get(f)) v.set(pivot_cols[k]);
        out.push_back(std::move(v));
    }
    return out;
}

HomologyResult image_quotient(const MatrixF2& a, const MatrixF2& b) {
    if (a.rows() != b.cols()) throw std::invalid_argument("image_quotient: A and B do not compose");
    if (!(b * a).is_zero()) throw std::logic_error("image_quotient: B*A != 0 (differential does not square to zero)");
    size_t n = a.rows();
    Echelon span(n);
    MatrixF2 at = a.transpose();
    for (size_t j = 0; j < at.rows(); ++j) span.insert(at.row(j));
    HomologyResult h;
    for (auto& z : kernel_basis(b)) {
        if (span.insert(z)) h.representatives.push_back(z);
    }
    h.dimension = h.representatives.size();
    return h;
}

ImageKernel image_kernel(size_t source_dim, size_t target_dim, const std::vector<BitVector>& images) {
    if (images.size() != source_dim) throw std::invalid_argument("image_kernel: wrong number of images");
    ImageKernel out;
    Echelon e(target_dim, source_dim);
    for (size_t j = 0; j < source_dim; ++j) {
        BitVector v = images[j];
        BitVector tag = BitVector::unit(source_dim, j);
        e.reduce(v, &tag);
        if (v.any()) {
            e.insert(std::move(v), std::move(tag));
            ++out.rank;
        } else {
            out.kernel.push_back(std::move(tag));
        }
    }
    return out;
}

}  // namespace kqcoop
