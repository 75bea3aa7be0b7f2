#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace isomat {

/// Dense matrix over GF(2) with bit-packed rows (64 entries per word).
/// Values are immutable in spirit: every algorithm below copies its input
/// and returns a fresh matrix, so concurrent reads need no locking.
class Gf2Matrix {
public:
    Gf2Matrix() = default;

    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

    static Gf2Matrix identity(std::size_t n) {
        Gf2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    /// Build from 0/1 entries, one inner vector per row.
    static Gf2Matrix from_rows(const std::vector<std::vector<int>>& rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.front().size();
        Gf2Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged row lengths");
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j] != 0);
        }
        return m;
    }

    /// Build an n_rows x cols.size() matrix whose j-th column is the bit
    /// pattern cols[j] (bit i of the word = entry in row i). Requires
    /// n_rows <= 64.
    static Gf2Matrix from_columns(std::size_t n_rows, const std::vector<std::uint64_t>& cols) {
        if (n_rows > 64) throw std::invalid_argument("from_columns supports at most 64 rows");
        Gf2Matrix m(n_rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < n_rows; ++i)
                if ((cols[j] >> i) & 1u) m.set(i, j, true);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        check_index(r, c);
        return (bits_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool v) {
        check_index(r, c);
        std::uint64_t& w = bits_[r * wpr_ + c / 64];
        std::uint64_t bit = std::uint64_t{1} << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    }

    void toggle(std::size_t r, std::size_t c) {
        check_index(r, c);
        bits_[r * wpr_ + c / 64] ^= std::uint64_t{1} << (c % 64);
    }

    std::span<const std::uint64_t> row_words(std::size_t r) const {
        return {bits_.data() + r * wpr_, wpr_};
    }

    /// dst_row ^= src_row (word-wide elimination step).
    void row_xor(std::size_t dst, std::size_t src) {
        std::uint64_t* d = bits_.data() + dst * wpr_;
        const std::uint64_t* s = bits_.data() + src * wpr_;
        for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::uint64_t* pa = bits_.data() + a * wpr_;
        std::uint64_t* pb = bits_.data() + b * wpr_;
        for (std::size_t w = 0; w < wpr_; ++w) std::swap(pa[w], pb[w]);
    }

    bool row_is_zero(std::size_t r) const {
        const std::uint64_t* p = bits_.data() + r * wpr_;
        for (std::size_t w = 0; w < wpr_; ++w)
            if (p[w]) return false;
        return true;
    }

    /// Column c as a bit pattern over the rows (requires rows() <= 64).
    std::uint64_t column_bits(std::size_t c) const {
        if (rows_ > 64) throw std::invalid_argument("column_bits supports at most 64 rows");
        if (c >= cols_) throw std::out_of_range("column index out of range");
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            v |= std::uint64_t{get(i, c)} << i;
        return v;
    }

    friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

private:
    void check_index(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;                // words per row
    std::vector<std::uint64_t> bits_;
};

/// Reduced row-echelon form. Elimination order is fixed (leftmost pivot,
/// topmost remaining row) so equal row spaces give literally equal outputs.
/// Returns the reduced matrix and the strictly increasing pivot columns.
inline std::pair<Gf2Matrix, std::vector<std::size_t>> rref(const Gf2Matrix& m) {
    Gf2Matrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < r.rows() && !r.get(pivot, col)) ++pivot;
        if (pivot == r.rows()) continue;
        r.swap_rows(row, pivot);
        for (std::size_t i = 0; i < r.rows(); ++i)
            if (i != row && r.get(i, col)) r.row_xor(i, row);
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), std::move(pivots)};
}

inline std::size_t rank(const Gf2Matrix& m) {
    Gf2Matrix r = m;
    std::size_t rk = 0;
    for (std::size_t col = 0; col < r.cols() && rk < r.rows(); ++col) {
        std::size_t pivot = rk;
        while (pivot < r.rows() && !r.get(pivot, col)) ++pivot;
        if (pivot == r.rows()) continue;
        r.swap_rows(rk, pivot);
        for (std::size_t i = pivot + 1; i < r.rows(); ++i)
            if (r.get(i, col)) r.row_xor(i, rk);
        ++rk;
    }
    return rk;
}

/// Incremental XOR basis over 64-bit column patterns, indexed by leading
/// bit. This is the hot path behind every matroid rank query.
class Gf2Basis {
public:
    /// Inserts v; returns true if it was independent of the current span.
    bool insert(std::uint64_t v) {
        while (v) {
            unsigned h = 63u - static_cast<unsigned>(std::countl_zero(v));
            if (!table_[h]) {
                table_[h] = v;
                ++size_;
                last_slot_ = h;
                return true;
            }
            v ^= table_[h];
        }
        return false;
    }

    /// Undo the most recent successful insert (slot bookkeeping is the
    /// caller's job for anything deeper; see push/pop pattern in callers).
    void erase_slot(unsigned h) {
        table_[h] = 0;
        --size_;
    }

    unsigned last_slot() const { return last_slot_; }
    std::size_t size() const { return size_; }
    bool contains(std::uint64_t v) const {
        while (v) {
            unsigned h = 63u - static_cast<unsigned>(std::countl_zero(v));
            if (!table_[h]) return false;
            v ^= table_[h];
        }
        return true;
    }

private:
    std::uint64_t table_[64] = {};
    std::size_t size_ = 0;
    unsigned last_slot_ = 0;
};

/// Rank of a set of columns given as bit patterns (row i = bit i).
inline std::size_t rank_of_columns(std::span<const std::uint64_t> cols) {
    Gf2Basis b;
    for (std::uint64_t v : cols) b.insert(v);
    return b.size();
}

/// Keep the rows and columns of a square matrix whose indices lie in s,
/// in their original relative order. s may be given in any order.
inline Gf2Matrix principal_submatrix(const Gf2Matrix& a, std::vector<std::size_t> s) {
    if (a.rows() != a.cols()) throw std::invalid_argument("principal_submatrix needs a square matrix");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (std::size_t i : s)
        if (i >= a.rows()) throw std::out_of_range("submatrix index out of range");
    Gf2Matrix out(s.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (a.get(s[i], s[j])) out.set(i, j, true);
    return out;
}

}  // namespace isomat
