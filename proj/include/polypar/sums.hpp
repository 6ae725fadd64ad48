#pragma once

#include "pairs.hpp"
#include "space.hpp"

#include <cmath>
#include <vector>

namespace polypar {

struct SumPoint {
    Vec left;
    Vec right;
};

inline Vec concat(const Vec& a, const Vec& b) {
    Vec z(a.size() + b.size());
    z.head(a.size()) = a;
    z.tail(b.size()) = b;
    return z;
}

inline SumPoint split_point(const PolyhedralSpace& X, const PolyhedralSpace& Y, const Vec& z) {
    if (z.size() != X.dim() + Y.dim()) throw DimensionMismatch("split_point: vector length");
    return SumPoint{Vec(z.head(X.dim())), Vec(z.tail(Y.dim()))};
}

/* X ⊕₁ Y: norm(x,y) = ‖x‖+‖y‖. Dual vertices are all signed concatenations
 * (f,g); the ball vertices come out as the embedded factor vertices. */
inline PolyhedralSpace sum_l1(const PolyhedralSpace& X, const PolyhedralSpace& Y) {
    std::vector<Vec> duals;
    for (const Vec& f : X.dual_vertices()) {
        for (const Vec& g : Y.dual_vertices()) {
            duals.push_back(concat(f, g));
            duals.push_back(concat(f, Vec(-g)));
        }
    }
    return PolyhedralSpace::build(X.dim() + Y.dim(), duals,
                                  "l1(" + X.name() + "," + Y.name() + ")");
}

/* X ⊕∞ Y: norm(x,y) = max(‖x‖,‖y‖). Dual vertices are the embedded factor
 * functionals; the ball vertices come out as all (v,w) combinations. */
inline PolyhedralSpace sum_linf(const PolyhedralSpace& X, const PolyhedralSpace& Y) {
    std::vector<Vec> duals;
    for (const Vec& f : X.dual_vertices()) duals.push_back(concat(f, Vec::Zero(Y.dim())));
    for (const Vec& g : Y.dual_vertices()) duals.push_back(concat(Vec::Zero(X.dim()), g));
    return PolyhedralSpace::build(X.dim() + Y.dim(), duals,
                                  "linf(" + X.name() + "," + Y.name() + ")");
}

namespace detail {

inline void check_sum_point(const PolyhedralSpace& X, const PolyhedralSpace& Y,
                            const SumPoint& z) {
    if (z.left.size() != X.dim() || z.right.size() != Y.dim())
        throw DimensionMismatch("sum point does not match the factor dimensions");
}

} // namespace detail

/* Pair test in X ⊕₁ Y without building the sum: the ⊕₁ norm decomposes, so
 * TEA holds iff it holds in both factors with the same sign of z2. */
inline PairVerdict l1_sum_pair_rules(const PolyhedralSpace& X, const PolyhedralSpace& Y,
                                     const SumPoint& z1, const SumPoint& z2, PairKind kind) {
    detail::check_sum_point(X, Y, z1);
    detail::check_sum_point(X, Y, z2);
    PairVerdict v;
    v.kind = kind;
    for (int lambda : {1, -1}) {
        if (kind == PairKind::tea && lambda < 0) break;
        if (is_tea_direct(X, z1.left, Vec(Rational(lambda) * z2.left)) &&
            is_tea_direct(Y, z1.right, Vec(Rational(lambda) * z2.right))) {
            v.holds = true;
            if (kind == PairKind::parallel) v.witness_sign = lambda;
            break;
        }
    }
    return v;
}

/* Pair test in X ⊕∞ Y: factor dominance decides. With at least one strict
 * inequality on the dominant side the verdict is the dominant factor's
 * verdict; crossed strict dominance rules parallelism out; a tie in both
 * coordinates falls back to the exact direct test through the max formula. */
inline PairVerdict linf_sum_pair_rules(const PolyhedralSpace& X, const PolyhedralSpace& Y,
                                       const SumPoint& z1, const SumPoint& z2, PairKind kind) {
    detail::check_sum_point(X, Y, z1);
    detail::check_sum_point(X, Y, z2);
    const Rational nx1 = norm(X, z1.left), ny1 = norm(Y, z1.right);
    const Rational nx2 = norm(X, z2.left), ny2 = norm(Y, z2.right);
    if (nx1 == 0 && ny1 == 0) throw ZeroVector("linf_sum_pair_rules: z1 = 0");
    if (nx2 == 0 && ny2 == 0) throw ZeroVector("linf_sum_pair_rules: z2 = 0");

    PairVerdict v;
    v.kind = kind;

    const auto factor_verdict = [&](const PolyhedralSpace& W, const Vec& a, const Vec& b) {
        for (int lambda : {1, -1}) {
            if (kind == PairKind::tea && lambda < 0) break;
            if (is_tea_direct(W, a, Vec(Rational(lambda) * b))) {
                v.holds = true;
                if (kind == PairKind::parallel) v.witness_sign = lambda;
                return;
            }
        }
    };

    const bool left_dom = nx1 >= ny1 && nx2 >= ny2;
    const bool right_dom = nx1 <= ny1 && nx2 <= ny2;
    if (left_dom && !right_dom) {
        factor_verdict(X, z1.left, z2.left);
        return v;
    }
    if (right_dom && !left_dom) {
        factor_verdict(Y, z1.right, z2.right);
        return v;
    }
    if (!left_dom && !right_dom) {
        // crossed strict dominance: no sign can attain the triangle equality
        v.holds = false;
        return v;
    }

    // both coordinates tied: decide directly on the composed norm
    const Rational total = std::max(nx1, ny1) + std::max(nx2, ny2);
    for (int lambda : {1, -1}) {
        if (kind == PairKind::tea && lambda < 0) break;
        const Rational nl = norm(X, Vec(z1.left + Rational(lambda) * z2.left));
        const Rational nr = norm(Y, Vec(z1.right + Rational(lambda) * z2.right));
        if (std::max(nl, nr) == total) {
            v.holds = true;
            if (kind == PairKind::parallel) v.witness_sign = lambda;
            break;
        }
    }
    return v;
}

struct PSumVerdict {
    bool holds = false;
    bool structural = false; // decided by an exact rule rather than numerically
};

/* Pair test in X ⊕_p Y for finite p > 1. Exact structural rules first
 * (componentwise necessity, zero-coordinate patterns); everything else is a
 * floating-point comparison within tol, reported as non-structural. */
inline PSumVerdict p_sum_pair_test(const PolyhedralSpace& X, const PolyhedralSpace& Y, double p,
                                   const SumPoint& z1, const SumPoint& z2, PairKind kind,
                                   double tol) {
    if (!std::isfinite(p) || p <= 1.0) throw InvalidP("p must be finite and greater than 1");
    if (!std::isfinite(tol) || tol <= 0.0) throw InvalidTolerance("tol must be positive");
    detail::check_sum_point(X, Y, z1);
    detail::check_sum_point(X, Y, z2);

    const bool x1z = is_zero_vec(z1.left), y1z = is_zero_vec(z1.right);
    const bool x2z = is_zero_vec(z2.left), y2z = is_zero_vec(z2.right);
    if (x1z && y1z) throw ZeroVector("p_sum_pair_test: z1 = 0");
    if (x2z && y2z) throw ZeroVector("p_sum_pair_test: z2 = 0");

    const auto factor_holds = [&](const PolyhedralSpace& W, const Vec& a, const Vec& b) {
        return kind == PairKind::tea ? is_tea_direct(W, a, b) : is_parallel_direct(W, a, b);
    };

    // componentwise failure in either factor sinks the pair for every finite p>1
    if (!x1z && !y1z && !x2z && !y2z) {
        if (!factor_holds(X, z1.left, z2.left) || !factor_holds(Y, z1.right, z2.right))
            return {false, true};
    }
    // both left components zero: the pair lives in the Y embedding
    if (x1z && x2z) return {factor_holds(Y, z1.right, z2.right), true};
    if (y1z && y2z) return {factor_holds(X, z1.left, z2.left), true};
    // opposite embeddings: never TEA or parallel for 1 < p < infinity
    if ((x1z && y2z) || (x2z && y1z)) return {false, true};

    const auto pnorm = [&](const Vec& a, const Vec& b) {
        return std::pow(std::pow(to_double(norm(X, a)), p) + std::pow(to_double(norm(Y, b)), p),
                        1.0 / p);
    };
    const double total = pnorm(z1.left, z1.right) + pnorm(z2.left, z2.right);
    for (int lambda : {1, -1}) {
        if (kind == PairKind::tea && lambda < 0) break;
        const double s = pnorm(Vec(z1.left + Rational(lambda) * z2.left),
                               Vec(z1.right + Rational(lambda) * z2.right));
        if (std::abs(s - total) <= tol) return {true, false};
    }
    return {false, false};
}

} // namespace polypar
