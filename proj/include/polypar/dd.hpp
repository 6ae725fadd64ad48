#pragma once

#include "errors.hpp"
#include "linalg.hpp"

#include <bitset>
#include <cstddef>
#include <vector>

namespace polypar::dd {

inline constexpr std::size_t kMaxConstraints = 256;
using ZeroSet = std::bitset<kMaxConstraints>;

/* Extreme ray of the current intermediate cone. `zero` records which of the
 * already-processed constraints are tight on the ray. */
struct Ray {
    Vec y;
    ZeroSet zero;
};

/* Scale a ray to coprime integer entries; the direction is preserved. */
inline void normalize_ray(Vec& y) {
    BigInt scale = 1;
    for (Eigen::Index i = 0; i < y.size(); ++i) scale = boost::multiprecision::lcm(scale, den(y(i)));
    BigInt content = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i)
        content = boost::multiprecision::gcd(content, num(y(i)) * (scale / den(y(i))));
    if (content == 0) return;
    const Rational factor = Rational(scale) / Rational(content);
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) *= factor;
}

/* Vertex enumeration for a bounded polytope {x : rows[i]·x <= rhs[i]} by the
 * double description method on the homogenization cone
 * {(x,t) : rhs[i]·t - rows[i]·x >= 0, t >= 0}. The cone is pointed whenever
 * the recession cone of the polytope is trivial, which every caller here
 * guarantees; violations surface as InternalError. Returns the vertex list
 * sorted lexicographically (empty when the polytope is empty). */
inline std::vector<Vec> enumerate_vertices(const std::vector<Vec>& rows,
                                           const std::vector<Rational>& rhs,
                                           std::size_t max_rays = 200000) {
    if (rows.size() != rhs.size()) throw DimensionMismatch("constraint row/rhs count");
    if (rows.empty()) throw InternalError("vertex enumeration needs at least one constraint");
    const Eigen::Index n = rows[0].size();
    const Eigen::Index d = n + 1;

    std::vector<Vec> b;
    b.reserve(rows.size() + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n) throw DimensionMismatch("ragged constraint rows");
        Vec r(d);
        r.head(n) = -rows[i];
        r(n) = rhs[i];
        b.push_back(std::move(r));
    }
    {
        Vec t = Vec::Zero(d);
        t(n) = 1;
        b.push_back(std::move(t));
    }
    if (b.size() > kMaxConstraints) throw CapacityExceeded("too many constraints for vertex enumeration");

    // Initial simplicial cone from d linearly independent constraint rows.
    std::vector<std::size_t> basis;
    {
        std::vector<Vec> picked;
        for (std::size_t i = 0; i < b.size() && basis.size() < static_cast<std::size_t>(d); ++i) {
            picked.push_back(b[i]);
            if (rank(mat_from_rows(picked)) == static_cast<int>(picked.size())) {
                basis.push_back(i);
            } else {
                picked.pop_back();
            }
        }
        if (basis.size() != static_cast<std::size_t>(d))
            throw InternalError("degenerate or unbounded region in vertex enumeration");
    }

    std::vector<Ray> rays;
    {
        std::vector<Vec> basis_rows;
        for (std::size_t i : basis) basis_rows.push_back(b[i]);
        const auto inv = inverse(mat_from_rows(basis_rows));
        if (!inv) throw InternalError("singular initial basis in vertex enumeration");
        for (Eigen::Index j = 0; j < d; ++j) {
            Ray r;
            r.y = inv->col(j);
            normalize_ray(r.y);
            for (std::size_t k = 0; k < basis.size(); ++k)
                if (static_cast<Eigen::Index>(k) != j) r.zero.set(basis[k]);
            rays.push_back(std::move(r));
        }
    }

    std::vector<bool> in_basis(b.size(), false);
    for (std::size_t i : basis) in_basis[i] = true;

    for (std::size_t k = 0; k < b.size(); ++k) {
        if (in_basis[k]) continue;

        std::vector<Rational> val(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) val[i] = b[k].dot(rays[i].y);

        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i] > 0) pos.push_back(i);
            else if (val[i] < 0) neg.push_back(i);
        }
        if (neg.empty()) {
            for (std::size_t i = 0; i < rays.size(); ++i)
                if (val[i] == 0) rays[i].zero.set(k);
            continue;
        }

        std::vector<Ray> next;
        next.reserve(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i] < 0) continue;
            Ray r = rays[i];
            if (val[i] == 0) r.zero.set(k);
            next.push_back(std::move(r));
        }

        /* Combine adjacent (+,-) pairs onto the new hyperplane. Two extreme
         * rays are adjacent iff no third ray's zero set contains the
         * intersection of theirs (combinatorial adjacency, valid for pointed
         * cones). */
        for (std::size_t p : pos) {
            for (std::size_t m : neg) {
                const ZeroSet common = rays[p].zero & rays[m].zero;
                if (common.count() + 2 < static_cast<std::size_t>(d)) continue;
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == p || o == m) continue;
                    if ((common & rays[o].zero) == common) adjacent = false;
                }
                if (!adjacent) continue;
                Ray r;
                r.y = val[p] * rays[m].y - val[m] * rays[p].y;
                normalize_ray(r.y);
                r.zero = common;
                r.zero.set(k);
                next.push_back(std::move(r));
                if (next.size() > max_rays) throw CapacityExceeded("ray blow-up in vertex enumeration");
            }
        }
        rays = std::move(next);
    }

    std::vector<Vec> vertices;
    for (const auto& r : rays) {
        const Rational t = r.y(n);
        if (t == 0) throw InternalError("unbounded polytope in vertex enumeration");
        if (t < 0) throw InternalError("negative homogenization coordinate");
        Vec v = r.y.head(n) / t;
        vertices.push_back(std::move(v));
    }
    std::sort(vertices.begin(), vertices.end(), lex_less);
    vertices.erase(std::unique(vertices.begin(), vertices.end(),
                               [](const Vec& a, const Vec& b2) { return exact_eq(a, b2); }),
                   vertices.end());
    return vertices;
}

} // namespace polypar::dd
