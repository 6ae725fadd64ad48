#pragma once

#include "dd.hpp"
#include "errors.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace polypar {

/* A dual-ball vertex referenced by representative index and sign. Antipodal
 * pairs ±g are stored once; the sign is carried here. */
struct SignedFunctional {
    int index = 0;
    int sign = 1;

    friend bool operator==(const SignedFunctional&, const SignedFunctional&) = default;
    friend auto operator<=>(const SignedFunctional&, const SignedFunctional&) = default;
};

struct SupportSet {
    Vec point;
    std::vector<SignedFunctional> functionals; // sorted by (index, sign)
};

/* A proper face of the unit ball. vertex_set indexes into
 * PolyhedralSpace::vertices(); active_functionals is the full set of signed
 * dual vertices equal to 1 on every listed vertex. */
struct Face {
    std::vector<int> vertex_set;                    // sorted ids
    std::vector<SignedFunctional> active_functionals; // sorted
    int dim = 0;

    friend bool operator==(const Face&, const Face&) = default;
};

class PolyhedralSpace {
public:
    static constexpr int kMaxDim = 6;
    static constexpr int kMaxDualReps = 64;
    static constexpr std::size_t kMaxVertices = 4096;

    static PolyhedralSpace build(int dim, const std::vector<Vec>& dual_vertices,
                                 std::string name = "");

    int dim() const { return dim_; }
    const std::string& name() const { return name_; }
    void rename(std::string name) { name_ = std::move(name); }

    /* One representative per antipodal pair, in first-seen input order. */
    const std::vector<Vec>& dual_vertices() const { return duals_; }
    /* All extreme points of the unit ball, lexicographically sorted. */
    const std::vector<Vec>& vertices() const { return vertices_; }
    const Vec& vertex(int id) const {
        if (id < 0 || static_cast<std::size_t>(id) >= vertices_.size())
            throw InternalError("vertex id out of range");
        return vertices_[static_cast<std::size_t>(id)];
    }

    Vec functional(const SignedFunctional& f) const {
        if (f.index < 0 || static_cast<std::size_t>(f.index) >= duals_.size() ||
            (f.sign != 1 && f.sign != -1))
            throw UnknownFunctional("signed functional out of range");
        return f.sign == 1 ? duals_[static_cast<std::size_t>(f.index)]
                           : Vec(-duals_[static_cast<std::size_t>(f.index)]);
    }

    std::optional<SignedFunctional> find_functional(const Vec& g) const {
        if (g.size() != dim_) return std::nullopt;
        for (std::size_t i = 0; i < duals_.size(); ++i) {
            if (exact_eq(g, duals_[i])) return SignedFunctional{static_cast<int>(i), 1};
            if (exact_eq(g, Vec(-duals_[i]))) return SignedFunctional{static_cast<int>(i), -1};
        }
        return std::nullopt;
    }

    std::optional<int> vertex_id(const Vec& v) const {
        const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v, lex_less);
        if (it != vertices_.end() && exact_eq(*it, v))
            return static_cast<int>(it - vertices_.begin());
        return std::nullopt;
    }

private:
    int dim_ = 0;
    std::string name_;
    std::vector<Vec> duals_;
    std::vector<Vec> vertices_;
};

inline PolyhedralSpace PolyhedralSpace::build(int dim, const std::vector<Vec>& dual_vertices,
                                              std::string name) {
    if (dim < 2) throw UnsupportedDimension("space dimension must be at least 2");
    if (dim > kMaxDim) throw CapacityExceeded("space dimension above supported maximum");
    if (dual_vertices.empty()) throw DegenerateNorm("no dual functionals given");
    for (const Vec& g : dual_vertices)
        if (g.size() != dim) throw DimensionMismatch("dual functional of wrong length");

    bool saw_zero = false;
    std::vector<Vec> reps;
    for (const Vec& g : dual_vertices) {
        if (is_zero_vec(g)) {
            saw_zero = true;
            continue;
        }
        bool dup = false;
        for (const Vec& h : reps) {
            if (exact_eq(g, h) || exact_eq(g, Vec(-h))) {
                dup = true;
                break;
            }
        }
        if (!dup) reps.push_back(g);
    }
    if (reps.empty() || rank(mat_from_rows(reps)) != dim)
        throw DegenerateNorm("dual functionals do not span the space");
    if (saw_zero) throw RedundantFunctional("zero functional");
    if (static_cast<int>(reps.size()) > kMaxDualReps)
        throw CapacityExceeded("too many dual functionals");

    std::vector<Vec> rows;
    std::vector<Rational> rhs;
    rows.reserve(2 * reps.size());
    for (const Vec& g : reps) {
        rows.push_back(g);
        rhs.emplace_back(1);
        rows.push_back(-g);
        rhs.emplace_back(1);
    }
    std::vector<Vec> verts = dd::enumerate_vertices(rows, rhs);
    if (verts.empty()) throw InternalError("unit ball has no vertices");
    if (verts.size() > kMaxVertices) throw CapacityExceeded("too many unit-ball vertices");

    /* A listed functional is a genuine dual-ball vertex iff it supports a
     * facet, i.e. its contact set has affine dimension dim-1 (polarity). */
    for (const Vec& g : reps) {
        std::vector<Vec> contact;
        for (const Vec& v : verts)
            if (g.dot(v) == 1) contact.push_back(v);
        if (contact.empty() || affine_dim(contact) != dim - 1)
            throw RedundantFunctional(format_vec(g));
    }

    for (const Vec& v : verts) {
        Rational m = 0;
        for (const Vec& g : reps) {
            const Rational t = abs_rat(g.dot(v));
            if (t > m) m = t;
        }
        if (m != 1) throw InternalError("unit-ball vertex off the sphere");
    }

    PolyhedralSpace X;
    X.dim_ = dim;
    X.name_ = std::move(name);
    X.duals_ = std::move(reps);
    X.vertices_ = std::move(verts);
    return X;
}

inline Rational norm(const PolyhedralSpace& X, const Vec& x) {
    if (x.size() != X.dim()) throw DimensionMismatch("norm: vector of wrong length");
    Rational m = 0;
    for (const Vec& g : X.dual_vertices()) {
        const Rational t = abs_rat(g.dot(x));
        if (t > m) m = t;
    }
    return m;
}

/* Ext J(x): the signed dual vertices attaining the norm. */
inline SupportSet support_set(const PolyhedralSpace& X, const Vec& x) {
    if (x.size() != X.dim()) throw DimensionMismatch("support_set: vector of wrong length");
    if (is_zero_vec(x)) throw ZeroVector("support_set of the zero vector");
    const Rational m = norm(X, x);
    SupportSet s;
    s.point = x;
    const auto& duals = X.dual_vertices();
    for (std::size_t i = 0; i < duals.size(); ++i) {
        const Rational t = duals[i].dot(x);
        if (t == m) s.functionals.push_back({static_cast<int>(i), 1});
        else if (-t == m) s.functionals.push_back({static_cast<int>(i), -1});
    }
    return s;
}

/* k with x a k-smooth point: rank of span J(x). */
inline int smoothness_order(const PolyhedralSpace& X, const Vec& x) {
    const SupportSet s = support_set(X, x);
    std::vector<Vec> rows;
    rows.reserve(s.functionals.size());
    for (const auto& f : s.functionals) rows.push_back(X.functional(f));
    return rank(mat_from_rows(rows));
}

namespace detail {

inline std::vector<SignedFunctional> active_on(const PolyhedralSpace& X,
                                               const std::vector<int>& ids) {
    std::vector<SignedFunctional> act;
    const auto& duals = X.dual_vertices();
    for (std::size_t i = 0; i < duals.size(); ++i) {
        for (int sign : {1, -1}) {
            bool all = true;
            for (int id : ids) {
                if (Rational(sign) * duals[i].dot(X.vertex(id)) != 1) {
                    all = false;
                    break;
                }
            }
            if (all) act.push_back({static_cast<int>(i), sign});
        }
    }
    std::sort(act.begin(), act.end());
    return act;
}

inline std::vector<Vec> face_points(const PolyhedralSpace& X, const std::vector<int>& ids) {
    std::vector<Vec> pts;
    pts.reserve(ids.size());
    for (int id : ids) pts.push_back(X.vertex(id));
    return pts;
}

inline Face make_face(const PolyhedralSpace& X, std::vector<int> ids) {
    Face F;
    F.dim = affine_dim(face_points(X, ids));
    F.active_functionals = active_on(X, ids);
    F.vertex_set = std::move(ids);
    return F;
}

} // namespace detail

inline std::vector<Face> facets(const PolyhedralSpace& X) {
    std::vector<Face> out;
    const auto& duals = X.dual_vertices();
    for (std::size_t i = 0; i < duals.size(); ++i) {
        for (int sign : {-1, 1}) {
            std::vector<int> ids;
            for (int id = 0; id < static_cast<int>(X.vertices().size()); ++id)
                if (Rational(sign) * duals[i].dot(X.vertex(id)) == 1) ids.push_back(id);
            Face F;
            F.vertex_set = std::move(ids);
            F.active_functionals = {{static_cast<int>(i), sign}};
            F.dim = X.dim() - 1;
            out.push_back(std::move(F));
        }
    }
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        return a.active_functionals < b.active_functionals;
    });
    return out;
}

/* Every proper face of a polytope is an intersection of the facets containing
 * it, so closing the facet vertex sets under pairwise intersection reaches
 * the whole lattice. */
inline std::vector<Face> all_faces(const PolyhedralSpace& X) {
    const std::vector<Face> fs = facets(X);
    std::vector<std::vector<int>> facet_sets;
    facet_sets.reserve(fs.size());
    for (const Face& F : fs) facet_sets.push_back(F.vertex_set);

    std::set<std::vector<int>> seen(facet_sets.begin(), facet_sets.end());
    std::vector<std::vector<int>> queue(seen.begin(), seen.end());
    while (!queue.empty()) {
        const std::vector<int> cur = std::move(queue.back());
        queue.pop_back();
        for (const auto& fset : facet_sets) {
            std::vector<int> inter;
            std::set_intersection(cur.begin(), cur.end(), fset.begin(), fset.end(),
                                  std::back_inserter(inter));
            if (inter.empty() || seen.count(inter)) continue;
            seen.insert(inter);
            queue.push_back(std::move(inter));
        }
    }

    std::vector<Face> out;
    out.reserve(seen.size());
    for (const auto& ids : seen) out.push_back(detail::make_face(X, ids));
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.active_functionals < b.active_functionals;
    });
    return out;
}

inline std::vector<Face> faces(const PolyhedralSpace& X, int k) {
    if (k < 0 || k > X.dim() - 1) throw PreconditionFailed("face dimension out of range");
    std::vector<Face> out;
    for (Face& F : all_faces(X))
        if (F.dim == k) out.push_back(std::move(F));
    return out;
}

/* The unique face whose relative interior contains x/norm(x). */
inline Face minimal_face(const PolyhedralSpace& X, const Vec& x) {
    const SupportSet s = support_set(X, x);
    std::vector<int> ids;
    for (int id = 0; id < static_cast<int>(X.vertices().size()); ++id) {
        bool all = true;
        for (const auto& f : s.functionals) {
            if (X.functional(f).dot(X.vertex(id)) != 1) {
                all = false;
                break;
            }
        }
        if (all) ids.push_back(id);
    }
    if (ids.empty()) throw InternalError("minimal face without vertices");
    Face F;
    F.dim = affine_dim(detail::face_points(X, ids));
    F.active_functionals = s.functionals;
    F.vertex_set = std::move(ids);
    return F;
}

/* For lattice faces, membership in the relative interior is exactly support
 * equality at norm one. */
inline bool in_relative_interior(const PolyhedralSpace& X, const Face& F, const Vec& x) {
    if (x.size() != X.dim()) throw DimensionMismatch("in_relative_interior: vector length");
    if (is_zero_vec(x)) return false;
    if (norm(X, x) != 1) return false;
    return support_set(X, x).functionals == F.active_functionals;
}

inline Vec barycenter(const PolyhedralSpace& X, const Face& F) {
    Vec c = Vec::Zero(X.dim());
    for (int id : F.vertex_set) c += X.vertex(id);
    return Vec(c / Rational(static_cast<long long>(F.vertex_set.size())));
}

/* Constructive split of a relative-interior point of a k-face into k+1
 * linearly independent face points with average x: unit steps along an
 * affine basis of the face, step size fixed by an exact ratio test against
 * the inactive functionals, plus the balancing step. */
inline std::vector<Vec> decompose_interior_point(const PolyhedralSpace& X, const Face& F,
                                                 const Vec& x) {
    if (x.size() != X.dim()) throw DimensionMismatch("decompose_interior_point: vector length");
    if (!in_relative_interior(X, F, x))
        throw NotInteriorPoint("point is not in the relative interior of the face");
    const int k = F.dim;
    if (k < 1) throw NotInteriorPoint("face must have positive dimension");

    const AffineHull hull = solve_affine(detail::face_points(X, F.vertex_set));
    if (static_cast<int>(hull.directions.size()) != k)
        throw InternalError("face dimension mismatch in decomposition");

    std::vector<Vec> steps; // k unit directions plus the balancing direction
    Vec sum = Vec::Zero(X.dim());
    for (const Vec& d : hull.directions) {
        Vec u = d / norm(X, d);
        sum += u;
        steps.push_back(std::move(u));
    }
    steps.push_back(Vec(-sum));

    /* Largest eps keeping every point x + (eps/k)w inside all inactive
     * constraints, then halved for strictness. */
    std::optional<Rational> bound;
    const auto& duals = X.dual_vertices();
    for (std::size_t i = 0; i < duals.size(); ++i) {
        for (int sign : {1, -1}) {
            const SignedFunctional f{static_cast<int>(i), sign};
            if (std::binary_search(F.active_functionals.begin(), F.active_functionals.end(), f))
                continue;
            const Vec g = X.functional(f);
            const Rational slack = 1 - g.dot(x);
            if (slack <= 0) throw InternalError("inactive functional without slack");
            for (const Vec& w : steps) {
                const Rational rate = g.dot(w);
                if (rate <= 0) continue;
                const Rational cap = Rational(k) * slack / rate;
                if (!bound || cap < *bound) bound = cap;
            }
        }
    }
    const Rational eps = bound ? *bound / 2 : Rational(1);

    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(k) + 1);
    out.push_back(Vec(x + (eps / k) * steps.back())); // x0 balances the rest
    for (int i = 0; i < k; ++i) out.push_back(Vec(x + (eps / k) * steps[static_cast<std::size_t>(i)]));

    Vec avg = Vec::Zero(X.dim());
    for (const Vec& p : out) avg += p;
    avg /= Rational(k + 1);
    if (!exact_eq(avg, x)) throw InternalError("decomposition average check failed");
    if (rank(mat_from_rows(out)) != k + 1)
        throw InternalError("decomposition independence check failed");
    for (const Vec& p : out)
        if (!in_relative_interior(X, F, p)) throw InternalError("decomposition left the face");
    return out;
}

inline bool in_smooth_cone(const PolyhedralSpace& X, const SignedFunctional& f, const Vec& x) {
    (void)X.functional(f); // validates f, throws UnknownFunctional
    if (x.size() != X.dim()) throw DimensionMismatch("in_smooth_cone: vector length");
    if (is_zero_vec(x)) return false;
    const SupportSet s = support_set(X, x);
    return s.functionals.size() == 1 && s.functionals[0] == f;
}

inline bool in_smooth_cone(const PolyhedralSpace& X, const Vec& g, const Vec& x) {
    const auto f = X.find_functional(g);
    if (!f) throw UnknownFunctional("vector is not a signed dual vertex");
    return in_smooth_cone(X, *f, x);
}

} // namespace polypar
