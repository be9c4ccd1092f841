#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "cmtilt/field.hpp"

namespace cmtilt {

template <exact_field K>
using Vec = std::vector<K>;

// Dense row-major matrix. All computations are fraction-free only in the
// sense of being exact; entries live in the field.
template <exact_field K>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<K> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, K(0)) {}

    K& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const K& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    void add_row(const Vec<K>& v) {
        assert(static_cast<int>(v.size()) == cols || rows == 0);
        if (rows == 0 && cols == 0) cols = static_cast<int>(v.size());
        a.insert(a.end(), v.begin(), v.end());
        ++rows;
    }
};

// In-place reduced row echelon form; returns pivot column indices.
template <exact_field K>
std::vector<int> rref(Mat<K>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int sel = -1;
        for (int i = r; i < m.rows; ++i)
            if (!m.at(i, c).is_zero()) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = c; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        K piv = m.at(r, c).inv();
        for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * piv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            K f = m.at(i, c);
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <exact_field K>
int rank(Mat<K> m) {
    return static_cast<int>(rref(m).size());
}

// Basis of the right kernel {x : m x = 0}.
template <exact_field K>
std::vector<Vec<K>> kernel_basis(Mat<K> m) {
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec<K>> basis;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        Vec<K> v(m.cols, K(0));
        v[c] = K(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(static_cast<int>(r), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Incrementally maintained reduced row space; used for span ranks, subspace
// membership and quotient-dimension bookkeeping.
template <exact_field K>
class RowSpace {
public:
    explicit RowSpace(int cols = 0) : cols_(cols) {}

    void reset(int cols) {
        cols_ = cols;
        rows_.clear();
        pivots_.clear();
    }

    // Returns true if v was independent (rank grew).
    bool add(Vec<K> v) {
        reduce(v);
        int p = first_nonzero(v);
        if (p < 0) return false;
        K inv = v[p].inv();
        for (int j = p; j < cols_; ++j) v[j] = v[j] * inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            K f = rows_[i][p];
            if (f.is_zero()) continue;
            for (int j = p; j < cols_; ++j)
                rows_[i][j] = rows_[i][j] - f * v[j];
        }
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        pivots_.insert(pivots_.begin() + pos, p);
        return true;
    }

    bool contains(Vec<K> v) const {
        reduce(v);
        return first_nonzero(v) < 0;
    }

    // Residue of v modulo the row space (fully reduced).
    Vec<K> residue(Vec<K> v) const {
        reduce(v);
        return v;
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }
    const std::vector<Vec<K>>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    // Coordinates of v in terms of the reduced basis rows, if v lies in span.
    std::optional<Vec<K>> coordinates(Vec<K> v) const {
        Vec<K> coeff(rows_.size(), K(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            K f = v[pivots_[i]];
            if (f.is_zero()) continue;
            coeff[i] = f;
            for (int j = pivots_[i]; j < cols_; ++j)
                v[j] = v[j] - f * rows_[i][j];
        }
        if (first_nonzero(v) >= 0) return std::nullopt;
        return coeff;
    }

private:
    void reduce(Vec<K>& v) const {
        assert(static_cast<int>(v.size()) == cols_);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            K f = v[pivots_[i]];
            if (f.is_zero()) continue;
            for (int j = pivots_[i]; j < cols_; ++j)
                v[j] = v[j] - f * rows_[i][j];
        }
    }
    int first_nonzero(const Vec<K>& v) const {
        for (int j = 0; j < cols_; ++j)
            if (!v[j].is_zero()) return j;
        return -1;
    }

    int cols_;
    std::vector<Vec<K>> rows_;
    std::vector<int> pivots_;
};

// Solve A x = b for one solution, if any (A given row-major).
template <exact_field K>
std::optional<Vec<K>> solve(const Mat<K>& A, const Vec<K>& b) {
    Mat<K> aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    std::vector<int> pivots = rref(aug);
    for (int p : pivots)
        if (p == A.cols) return std::nullopt;  // inconsistent
    Vec<K> x(A.cols, K(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug.at(static_cast<int>(r), A.cols);
    return x;
}

}  // namespace cmtilt
