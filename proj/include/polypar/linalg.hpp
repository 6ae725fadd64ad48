#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace polypar {

using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

inline Vec vec_of(std::initializer_list<Rational> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (const auto& x : xs) v(i++) = x;
    return v;
}

inline Vec vec_of(const std::vector<Rational>& xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = xs[static_cast<std::size_t>(i)];
    return v;
}

inline Mat mat_from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Mat(0, 0);
    Mat m(static_cast<Eigen::Index>(rows.size()), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw DimensionMismatch("ragged row list");
        m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    }
    return m;
}

inline bool exact_eq(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return false;
    return true;
}

inline bool is_zero_vec(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i) != 0) return false;
    return true;
}

inline bool lex_less(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) return true;
        if (a(i) > b(i)) return false;
    }
    return false;
}

inline std::string format_vec(const Vec& v) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out << ",";
        out << format_rational(v(i));
    }
    return out.str();
}

/* Comma-separated rationals, e.g. "1,-1/2,0". */
inline Vec parse_vec(const std::string& text) {
    std::vector<Rational> xs;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string field =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        xs.push_back(parse_rational(field));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return vec_of(xs);
}

/* Rank by Bareiss fraction-free elimination. Rows are first scaled to
 * integers (rank-preserving), then eliminated with the two-step recurrence
 * M(i,j) <- (pivot*M(i,j) - M(i,c)*M(r,j)) / prev, whose divisions are exact
 * by Sylvester's identity. Intermediate entries stay minor-sized instead of
 * growing exponentially as in naive exact elimination. */
inline int rank(const Mat& m) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    std::vector<std::vector<BigInt>> a(static_cast<std::size_t>(rows),
                                       std::vector<BigInt>(static_cast<std::size_t>(cols)));
    for (Eigen::Index i = 0; i < rows; ++i) {
        BigInt scale = 1;
        for (Eigen::Index j = 0; j < cols; ++j) scale = boost::multiprecision::lcm(scale, den(m(i, j)));
        for (Eigen::Index j = 0; j < cols; ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                num(m(i, j)) * (scale / den(m(i, j)));
    }

    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < static_cast<std::size_t>(cols) && r < static_cast<std::size_t>(rows); ++c) {
        std::size_t p = r;
        while (p < static_cast<std::size_t>(rows) && a[p][c] == 0) ++p;
        if (p == static_cast<std::size_t>(rows)) continue;
        std::swap(a[p], a[r]);
        const BigInt pivot = a[r][c];
        for (std::size_t i = r + 1; i < static_cast<std::size_t>(rows); ++i) {
            for (std::size_t j = c + 1; j < static_cast<std::size_t>(cols); ++j)
                a[i][j] = (pivot * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = pivot;
        ++r;
    }
    return static_cast<int>(r);
}

struct Rref {
    Mat m;
    std::vector<Eigen::Index> pivot_cols;
};

/* Reduced row echelon form with exact rational arithmetic. */
inline Rref rref(Mat m) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    std::vector<Eigen::Index> pivots;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        m.row(p).swap(m.row(r));
        const Rational inv = Rational(1) / m(r, c);
        m.row(r) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            m.row(i) -= m(i, c) * m.row(r);
        }
        pivots.push_back(c);
        ++r;
    }
    return Rref{std::move(m), std::move(pivots)};
}

/* Basis of {x : Mx = 0}, from the RREF free columns. Deterministic order:
 * one basis vector per free column, ascending. */
inline std::vector<Vec> kernel_basis(const Mat& m) {
    const Eigen::Index cols = m.cols();
    const Rref rr = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (Eigen::Index c : rr.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<Vec> basis;
    for (Eigen::Index f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        Vec v = Vec::Zero(cols);
        v(f) = 1;
        for (std::size_t k = 0; k < rr.pivot_cols.size(); ++k)
            v(rr.pivot_cols[k]) = -rr.m(static_cast<Eigen::Index>(k), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

struct AffineHull {
    Vec base;
    std::vector<Vec> directions; // basis of the direction space
};

/* Affine hull of a nonempty point set: base point plus a canonical basis
 * (RREF rows of the difference set) of the direction space. */
inline AffineHull solve_affine(const std::vector<Vec>& points) {
    if (points.empty()) throw ZeroVector("affine hull of empty point set");
    AffineHull hull;
    hull.base = points[0];
    if (points.size() == 1) return hull;

    std::vector<Vec> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
    const Rref rr = rref(mat_from_rows(diffs));
    for (std::size_t k = 0; k < rr.pivot_cols.size(); ++k)
        hull.directions.push_back(rr.m.row(static_cast<Eigen::Index>(k)).transpose());
    return hull;
}

inline int affine_dim(const std::vector<Vec>& points) {
    if (points.empty()) return -1;
    return static_cast<int>(solve_affine(points).directions.size());
}

struct LinearSolution {
    Vec particular;
    std::vector<Vec> kernel; // basis of the homogeneous solution space
};

/* Full solution set of Ax = b, or nullopt when inconsistent. */
inline std::optional<LinearSolution> solve_linear(const Mat& a, const Vec& b) {
    if (a.rows() != b.size()) throw DimensionMismatch("solve_linear: rhs size");
    Mat aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    const Rref rr = rref(std::move(aug));
    for (Eigen::Index c : rr.pivot_cols)
        if (c == a.cols()) return std::nullopt;

    LinearSolution sol;
    sol.particular = Vec::Zero(a.cols());
    for (std::size_t k = 0; k < rr.pivot_cols.size(); ++k)
        sol.particular(rr.pivot_cols[k]) = rr.m(static_cast<Eigen::Index>(k), a.cols());
    sol.kernel = kernel_basis(a);
    return sol;
}

inline std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const Eigen::Index n = m.rows();
    Mat aug(n, 2 * n);
    aug.leftCols(n) = m;
    aug.rightCols(n) = Mat::Identity(n, n);
    const Rref rr = rref(std::move(aug));
    if (static_cast<Eigen::Index>(rr.pivot_cols.size()) != n) return std::nullopt;
    for (Eigen::Index k = 0; k < n; ++k)
        if (rr.pivot_cols[static_cast<std::size_t>(k)] != k) return std::nullopt;
    return Mat(rr.m.rightCols(n));
}

} // namespace polypar
