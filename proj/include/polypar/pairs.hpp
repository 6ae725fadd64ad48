#pragma once

#include "space.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace polypar {

enum class PairKind { parallel, tea };

struct PairVerdict {
    PairKind kind = PairKind::tea;
    bool holds = false;
    std::optional<int> witness_sign;                      // lambda in {+1,-1}, parallel only
    std::optional<SignedFunctional> witness_functional;   // common support when holds
};

/* Triangle equality attainment, decided directly on the norm. */
inline bool is_tea_direct(const PolyhedralSpace& X, const Vec& x, const Vec& y) {
    if (x.size() != X.dim() || y.size() != X.dim())
        throw DimensionMismatch("is_tea_direct: vector length");
    return norm(X, Vec(x + y)) == norm(X, x) + norm(X, y);
}

inline bool is_parallel_direct(const PolyhedralSpace& X, const Vec& x, const Vec& y) {
    return is_tea_direct(X, x, y) || is_tea_direct(X, x, Vec(-y));
}

namespace detail {

inline std::optional<SignedFunctional> first_common(const std::vector<SignedFunctional>& a,
                                                    const std::vector<SignedFunctional>& b) {
    std::vector<SignedFunctional> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (common.empty()) return std::nullopt;
    return common.front();
}

inline std::vector<SignedFunctional> negated(std::vector<SignedFunctional> fs) {
    for (auto& f : fs) f.sign = -f.sign;
    std::sort(fs.begin(), fs.end());
    return fs;
}

} // namespace detail

/* TEA via common extreme supporting functionals: the two support sets must
 * meet, since a nonempty intersection of dual-ball faces contains a vertex. */
inline PairVerdict is_tea_functional(const PolyhedralSpace& X, const Vec& x, const Vec& y) {
    const auto sx = support_set(X, x).functionals;
    const auto sy = support_set(X, y).functionals;
    PairVerdict v;
    v.kind = PairKind::tea;
    if (const auto w = detail::first_common(sx, sy)) {
        v.holds = true;
        v.witness_functional = *w;
    }
    return v;
}

/* Parallelism: TEA up to a sign on y; lambda records which sign worked. */
inline PairVerdict is_parallel_functional(const PolyhedralSpace& X, const Vec& x, const Vec& y) {
    const auto sx = support_set(X, x).functionals;
    const auto sy = support_set(X, y).functionals;
    PairVerdict v;
    v.kind = PairKind::parallel;
    if (const auto w = detail::first_common(sx, sy)) {
        v.holds = true;
        v.witness_sign = 1;
        v.witness_functional = *w;
        return v;
    }
    if (const auto w = detail::first_common(sx, detail::negated(sy))) {
        v.holds = true;
        v.witness_sign = -1;
        v.witness_functional = *w;
    }
    return v;
}

/* James criterion: some f in J(x) = co(Ext J(x)) annihilates y. */
inline bool is_bj_orthogonal(const PolyhedralSpace& X, const Vec& x, const Vec& y) {
    if (y.size() != X.dim()) throw DimensionMismatch("is_bj_orthogonal: vector length");
    const auto sx = support_set(X, x).functionals; // throws on x = 0
    Rational lo = X.functional(sx.front()).dot(y);
    Rational hi = lo;
    for (const auto& f : sx) {
        const Rational t = X.functional(f).dot(y);
        if (t < lo) lo = t;
        if (t > hi) hi = t;
    }
    return lo <= 0 && 0 <= hi;
}

/* Approximate orthogonality: norm(x+ly)^2 >= norm(x)^2 - 2*eps*norm(x)*norm(ly)
 * for every real l, decided exactly. norm(x+ly) is piecewise linear in l with
 * breakpoints where two signed functionals cross; on each closed piece the
 * condition is a rational quadratic inequality solved in closed form. */
inline bool is_eps_orthogonal(const PolyhedralSpace& X, const Vec& x, const Vec& y,
                              const Rational& eps) {
    if (eps < 0 || eps >= 1) throw InvalidEpsilon("eps must lie in [0,1)");
    if (y.size() != X.dim()) throw DimensionMismatch("is_eps_orthogonal: vector length");
    const Rational c = norm(X, x);
    if (c == 0) throw ZeroVector("is_eps_orthogonal: x must be nonzero");
    const Rational w = norm(X, y);
    if (w == 0) return true;

    std::vector<Vec> sf; // all signed functionals
    for (const Vec& g : X.dual_vertices()) {
        sf.push_back(g);
        sf.push_back(Vec(-g));
    }

    std::vector<Rational> breaks = {Rational(0)}; // |l| splits at zero
    for (std::size_t i = 0; i < sf.size(); ++i) {
        for (std::size_t j = i + 1; j < sf.size(); ++j) {
            const Rational dy = (sf[i] - sf[j]).dot(y);
            if (dy == 0) continue;
            breaks.push_back(-(sf[i] - sf[j]).dot(x) / dy);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    const auto value_at = [&](const Rational& l) {
        std::size_t best = 0;
        Rational bv = sf[0].dot(x) + l * sf[0].dot(y);
        for (std::size_t i = 1; i < sf.size(); ++i) {
            const Rational t = sf[i].dot(x) + l * sf[i].dot(y);
            if (t > bv) {
                bv = t;
                best = i;
            }
        }
        return best;
    };

    // intervals: (-inf, b0], [b0,b1], ..., [bK, +inf)
    const std::size_t k = breaks.size();
    for (std::size_t seg = 0; seg <= k; ++seg) {
        const bool has_lo = seg > 0;
        const bool has_hi = seg < k;
        const Rational lo = has_lo ? breaks[seg - 1] : Rational(0);
        const Rational hi = has_hi ? breaks[seg] : Rational(0);
        Rational mid;
        if (has_lo && has_hi) mid = (lo + hi) / 2;
        else if (has_hi) mid = hi - 1;
        else mid = lo + 1;

        const Vec& g = sf[value_at(mid)];
        const Rational a = g.dot(x);
        const Rational b = g.dot(y);
        const int sigma = mid >= 0 ? 1 : -1;

        const Rational A = b * b;
        const Rational B = 2 * a * b + Rational(sigma) * 2 * c * eps * w;
        const Rational C = a * a - c * c;
        const auto q = [&](const Rational& l) { return A * l * l + B * l + C; };

        std::vector<Rational> cand;
        if (has_lo) cand.push_back(lo);
        if (has_hi) cand.push_back(hi);
        if (A > 0) {
            const Rational vertex = -B / (2 * A);
            if ((!has_lo || vertex >= lo) && (!has_hi || vertex <= hi)) cand.push_back(vertex);
        } else if (!has_lo || !has_hi) {
            // unbounded pieces ride the steepest functional, so b = ±norm(y) != 0
            throw InternalError("flat unbounded piece in eps-orthogonality sweep");
        }
        for (const Rational& l : cand)
            if (q(l) < 0) return false;
    }
    return true;
}

/* Numerical index one: every extreme functional has modulus one on every
 * extreme point. */
inline bool has_numerical_index_one(const PolyhedralSpace& X) {
    for (const Vec& g : X.dual_vertices())
        for (const Vec& v : X.vertices())
            if (abs_rat(g.dot(v)) != 1) return false;
    return true;
}

} // namespace polypar
