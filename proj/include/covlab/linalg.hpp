#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "covlab/vec.hpp"

namespace covlab {

/// Dense rational matrix, row-major. Sized for the tiny systems of this
/// library (n <= 4 plus a handful of rows), not for general numerics.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(rows * cols, Rat(0)) {}

    static Mat identity(int n)
    {
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static Mat from_rows(const std::vector<Vec>& rows)
    {
        Mat m(static_cast<int>(rows.size()), rows.empty() ? 0 : rows[0].dim());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                m(i, j) = rows[i][j];
        return m;
    }

    static Mat from_cols(const std::vector<Vec>& cols)
    {
        Mat m(cols.empty() ? 0 : cols[0].dim(), static_cast<int>(cols.size()));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                m(i, j) = cols[j][i];
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rat& operator()(int i, int j) { return a_[i * c_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[i * c_ + j]; }

    Vec row(int i) const
    {
        Vec v(c_);
        for (int j = 0; j < c_; ++j)
            v[j] = (*this)(i, j);
        return v;
    }

    Vec apply(const Vec& x) const
    {
        Vec y(r_);
        for (int i = 0; i < r_; ++i) {
            Rat s(0);
            for (int j = 0; j < c_; ++j)
                s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    Mat transposed() const
    {
        Mat t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<Rat> a_;
};

namespace detail {

// Fraction-preserving Gauss-Jordan. Returns pivot columns; m is reduced in
// place to reduced row echelon form.
inline std::vector<int> rref(Mat& m)
{
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(row, j));
        Rat inv = Rat(1) / m(row, col);
        for (int j = col; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0)
                continue;
            Rat f = m(i, col);
            for (int j = col; j < m.cols(); ++j)
                m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace detail

inline int rank(Mat m) { return static_cast<int>(detail::rref(m).size()); }

inline Rat det(Mat m)
{
    if (m.rows() != m.cols())
        throw Error(ErrorKind::SingularMatrix, "det: non-square");
    int n = m.rows();
    Rat d(1);
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (m(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0)
            return Rat(0);
        if (p != col) {
            for (int j = 0; j < n; ++j)
                std::swap(m(p, j), m(col, j));
            d = -d;
        }
        d *= m(col, col);
        Rat inv = Rat(1) / m(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (m(i, col) == 0)
                continue;
            Rat f = m(i, col) * inv;
            for (int j = col; j < n; ++j)
                m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

/// Unique solution of A x = b, or nullopt when A is singular (square A).
inline std::optional<Vec> solve(const Mat& a, const Vec& b)
{
    int n = a.rows();
    Mat aug(n, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto pivots = detail::rref(aug);
    if (static_cast<int>(pivots.size()) != n || (!pivots.empty() && pivots.back() == n))
        return std::nullopt;
    Vec x(n);
    for (int i = 0; i < n; ++i)
        x[i] = aug(i, n);
    return x;
}

inline std::optional<Mat> inverse(const Mat& a)
{
    int n = a.rows();
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = detail::rref(aug);
    if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
        return std::nullopt;
    Mat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

/// Basis of the right nullspace of m.
inline std::vector<Vec> nullspace(Mat m)
{
    int n = m.cols();
    auto pivots = detail::rref(m);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots)
        is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        Vec v(n);
        v[free] = 1;
        for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
            v[pivots[i]] = -m(i, free);
        basis.push_back(v);
    }
    return basis;
}

/// Dimension of the affine hull of a point set (-1 for the empty set).
inline int affine_rank(const std::vector<Vec>& pts)
{
    if (pts.empty())
        return -1;
    if (pts.size() == 1)
        return 0;
    std::vector<Vec> diffs;
    diffs.reserve(pts.size() - 1);
    for (size_t i = 1; i < pts.size(); ++i)
        diffs.push_back(pts[i] - pts[0]);
    return rank(Mat::from_rows(diffs));
}

} // namespace covlab
