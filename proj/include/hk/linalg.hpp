#pragma once

#include <hk/prime_field.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hk {

/// One nonzero entry of a sparse column: (row, value).
using SparseEntry = std::pair<std::uint32_t, std::uint32_t>;

/// Incremental column echelon form over F_p.
///
/// Columns are inserted one at a time, so callers never have to materialize
/// a whole matrix. Every stored basis vector is normalized to 1 at its pivot
/// row and is zero above it; only the band [pivot, end) is kept. Reduction
/// walks the rows of the incoming column downward and stops at the first
/// nonzero entry that is not already a pivot row.
class EchelonBuilder {
public:
    EchelonBuilder(PrimeField field, std::size_t rows)
        : field_(field), rows_(rows), pivot_of_row_(rows, -1), acc_(rows, 0) {
        const std::uint64_t pm1 = field_.characteristic() - 1;
        step_ = pm1 * pm1;
        limit_ = std::numeric_limits<std::uint64_t>::max() - step_ - field_.characteristic();
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t rank() const noexcept { return basis_.size(); }
    bool full() const noexcept { return basis_.size() == rows_; }

    /// Inserts a sparse column; entries may repeat rows and are summed.
    /// Returns true when the rank grew.
    bool insert(std::span<const SparseEntry> column) {
        if (full() || column.empty()) return false;
        std::size_t lo = rows_, hi = 0;
        for (auto [r, v] : column) {
            if (r >= rows_) throw std::out_of_range("column entry outside matrix");
            acc_[r] += v % field_.characteristic();
            lo = std::min<std::size_t>(lo, r);
            hi = std::max<std::size_t>(hi, r + 1);
        }
        bound_ = std::uint64_t{field_.characteristic()} * column.size();
        return reduce(lo, hi);
    }

    /// Inserts a dense column of length rows().
    bool insert_dense(std::span<const std::uint32_t> column) {
        if (column.size() != rows_) throw std::invalid_argument("dense column has wrong length");
        if (full()) return false;
        std::size_t lo = rows_, hi = 0;
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint32_t v = column[r] % field_.characteristic();
            if (v == 0) continue;
            acc_[r] = v;
            lo = std::min(lo, r);
            hi = r + 1;
        }
        if (lo == rows_) return false;
        bound_ = field_.characteristic();
        return reduce(lo, hi);
    }

private:
    struct BasisVector {
        std::uint32_t begin, end;
        std::size_t offset;
    };

    bool reduce(std::size_t lo, std::size_t hi) {
        const std::uint64_t p = field_.characteristic();
        std::size_t r = lo;
        while (r < hi) {
            std::uint64_t val = acc_[r] % p;
            if (val == 0) {
                acc_[r] = 0;
                ++r;
                continue;
            }
            int j = pivot_of_row_[r];
            if (j < 0) {
                store(r, hi, static_cast<std::uint32_t>(val));
                clear(lo, hi);
                return true;
            }
            if (bound_ > limit_) {
                for (std::size_t i = r; i < hi; ++i) acc_[i] %= p;
                bound_ = p;
            }
            const BasisVector& b = basis_[static_cast<std::size_t>(j)];
            const std::uint64_t c = p - val;
            const std::uint32_t* src = arena_.data() + b.offset;
            std::uint64_t* dst = acc_.data() + b.begin;
            const std::size_t len = b.end - b.begin;
            for (std::size_t k = 0; k < len; ++k) dst[k] += c * src[k];
            bound_ += step_;
            acc_[r] = 0;
            hi = std::max<std::size_t>(hi, b.end);
            ++r;
        }
        clear(lo, hi);
        return false;
    }

    void store(std::size_t pivot, std::size_t hi, std::uint32_t pivot_value) {
        const std::uint64_t p = field_.characteristic();
        const std::uint64_t inv = field_.inv(pivot_value);
        std::size_t end = hi;
        while (end > pivot + 1 && acc_[end - 1] % p == 0) --end;
        BasisVector b{static_cast<std::uint32_t>(pivot), static_cast<std::uint32_t>(end), arena_.size()};
        for (std::size_t i = pivot; i < end; ++i)
            arena_.push_back(static_cast<std::uint32_t>(acc_[i] % p * inv % p));
        pivot_of_row_[pivot] = static_cast<int>(basis_.size());
        basis_.push_back(b);
    }

    void clear(std::size_t lo, std::size_t hi) { std::fill(acc_.begin() + lo, acc_.begin() + hi, 0); }

    PrimeField field_;
    std::size_t rows_;
    std::vector<int> pivot_of_row_;
    std::vector<BasisVector> basis_;
    std::vector<std::uint32_t> arena_;
    std::vector<std::uint64_t> acc_;
    std::uint64_t step_ = 0, limit_ = 0, bound_ = 0;
};

/// Dense row-major matrix over F_p.
class MatrixFF {
public:
    MatrixFF(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

    MatrixFF(PrimeField field, std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& row_major)
        : MatrixFF(field, rows, cols) {
        if (row_major.size() != rows * cols) throw std::invalid_argument("entry count does not match shape");
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] = field_.reduce(row_major[i]);
    }

    const PrimeField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::uint32_t operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t v) { entries_[r * cols_ + c] = field_.reduce(v); }

    MatrixFF transpose() const {
        MatrixFF t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = entries_[r * cols_ + c];
        return t;
    }

    std::vector<std::uint32_t> column(std::size_t c) const {
        std::vector<std::uint32_t> col(rows_);
        for (std::size_t r = 0; r < rows_; ++r) col[r] = entries_[r * cols_ + c];
        return col;
    }

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> entries_;
};

inline std::size_t rank(const MatrixFF& m) {
    EchelonBuilder eb(m.field(), m.rows());
    for (std::size_t c = 0; c < m.cols() && !eb.full(); ++c) eb.insert_dense(m.column(c));
    return eb.rank();
}

inline std::size_t kernel_dim(const MatrixFF& m) { return m.cols() - rank(m); }

} // namespace hk
