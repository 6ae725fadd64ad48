#pragma once

#include "pairs.hpp"
#include "rng.hpp"
#include "space.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polypar {

struct Operator {
    PolyhedralSpace domain;
    PolyhedralSpace codomain;
    Mat matrix; // codomain.dim() x domain.dim()
    int rank = 0;
    std::vector<Vec> kernel;
};

inline Operator make_operator(PolyhedralSpace domain, PolyhedralSpace codomain, Mat matrix) {
    if (matrix.rows() != codomain.dim() || matrix.cols() != domain.dim())
        throw DimensionMismatch("operator matrix does not match the spaces");
    Operator T{std::move(domain), std::move(codomain), std::move(matrix), 0, {}};
    T.rank = rank(T.matrix);
    T.kernel = kernel_basis(T.matrix);
    return T;
}

inline Vec apply(const Operator& T, const Vec& x) {
    if (x.size() != T.domain.dim()) throw DimensionMismatch("apply: vector length");
    return T.matrix * x;
}

inline bool is_bijective(const Operator& T) {
    return T.domain.dim() == T.codomain.dim() && T.rank == T.domain.dim();
}

/* Exact operator norm: the max of the convex function x -> norm(Tx) over the
 * unit ball is attained at a ball vertex. */
inline Rational op_norm(const Operator& T) {
    Rational m = 0;
    for (const Vec& v : T.domain.vertices()) {
        const Rational t = norm(T.codomain, apply(T, v));
        if (t > m) m = t;
    }
    return m;
}

enum class CertificateKind { common_functional, image_zero, rank_le_one };

struct FacetCertificate {
    Face facet;
    CertificateKind kind = CertificateKind::common_functional;
    std::optional<SignedFunctional> functional; // codomain functional when common
};

struct Counterexample {
    Vec x;
    Vec y;
    bool holds_before = false;
    bool holds_after = false;
};

struct PreservationReport {
    PairKind kind = PairKind::tea;
    bool preserves = false;
    std::string branch; // "facet_scan" | "tea_equivalence" | "rank_le_one"
    std::vector<FacetCertificate> certificates;
    std::optional<Face> failing_facet;
    std::optional<Counterexample> counterexample;
};

namespace detail {

inline bool image_zero_on(const Operator& T, const std::vector<int>& ids) {
    for (int id : ids)
        if (!is_zero_vec(Vec(apply(T, T.domain.vertex(id))))) return false;
    return true;
}

/* S_F: a codomain signed functional attaining the image norm at every listed
 * vertex image (vertices in the kernel impose no constraint). */
inline std::optional<SignedFunctional> common_image_functional(const Operator& T,
                                                               const std::vector<int>& ids) {
    std::vector<Vec> imgs;
    std::vector<Rational> norms;
    for (int id : ids) {
        imgs.push_back(apply(T, T.domain.vertex(id)));
        norms.push_back(norm(T.codomain, imgs.back()));
    }
    const auto& duals = T.codomain.dual_vertices();
    for (std::size_t i = 0; i < duals.size(); ++i) {
        for (int sign : {1, -1}) {
            bool all = true;
            for (std::size_t k = 0; k < imgs.size() && all; ++k)
                if (Rational(sign) * duals[i].dot(imgs[k]) != norms[k]) all = false;
            if (all) return SignedFunctional{static_cast<int>(i), sign};
        }
    }
    return std::nullopt;
}

inline bool pair_holds(const PolyhedralSpace& S, PairKind kind, const Vec& a, const Vec& b) {
    return kind == PairKind::tea ? is_tea_direct(S, a, b) : is_parallel_direct(S, a, b);
}

/* Hunt for an exact broken pair inside a failing facet: vertex pairs first,
 * then barycenters of the contained sub-faces, then seeded random points of
 * the facet cone. */
inline std::optional<Counterexample> search_counterexample(const Operator& T, const Face& F,
                                                           PairKind kind) {
    std::vector<Vec> cands;
    for (int id : F.vertex_set) cands.push_back(T.domain.vertex(id));
    for (const Face& G : all_faces(T.domain)) {
        if (G.dim < 1 || G.vertex_set.size() >= F.vertex_set.size()) continue;
        if (std::includes(F.vertex_set.begin(), F.vertex_set.end(), G.vertex_set.begin(),
                          G.vertex_set.end()))
            cands.push_back(barycenter(T.domain, G));
    }
    cands.push_back(barycenter(T.domain, F));
    Rng rng(0x9e3779b9u + static_cast<std::uint64_t>(cands.size()));
    for (int t = 0; t < 200; ++t) {
        Vec x = Vec::Zero(T.domain.dim());
        for (int id : F.vertex_set)
            x += Rational(rng.uniform(1, 9)) / Rational(rng.uniform(1, 9)) * T.domain.vertex(id);
        cands.push_back(std::move(x));
    }

    for (std::size_t j = 0; j < cands.size(); ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            const Vec& a = cands[i];
            const Vec& b = cands[j];
            if (!pair_holds(T.domain, kind, a, b)) continue;
            if (pair_holds(T.codomain, kind, Vec(apply(T, a)), Vec(apply(T, b)))) continue;
            return Counterexample{a, b, true, false};
        }
    }
    return std::nullopt;
}

inline PreservationReport facet_scan(const Operator& T, PairKind kind) {
    PreservationReport rep;
    rep.kind = kind;
    rep.preserves = true;
    rep.branch = "facet_scan";
    for (const Face& F : facets(T.domain)) {
        if (image_zero_on(T, F.vertex_set)) {
            rep.certificates.push_back({F, CertificateKind::image_zero, std::nullopt});
            continue;
        }
        if (const auto g = common_image_functional(T, F.vertex_set)) {
            rep.certificates.push_back({F, CertificateKind::common_functional, *g});
            continue;
        }
        rep.preserves = false;
        rep.failing_facet = F;
        rep.counterexample = search_counterexample(T, F, kind);
        break;
    }
    return rep;
}

} // namespace detail

/* TEA-pair preservation by the facet criterion: every facet either maps to
 * zero or its vertex images share a supporting functional. Vertex equality
 * extends to the whole facet cone by convexity; necessity comes from the
 * smooth-cone mapping argument, and the brute-force oracle suite guards the
 * reduction. */
inline PreservationReport preserves_tea(const Operator& T) {
    return detail::facet_scan(T, PairKind::tea);
}

/* Parallel-pair preservation: rank <= 1 images are pairwise dependent, hence
 * always parallel; rank >= 2 is equivalent to TEA preservation. */
inline PreservationReport preserves_parallel(const Operator& T) {
    if (T.rank <= 1) {
        PreservationReport rep;
        rep.kind = PairKind::parallel;
        rep.preserves = true;
        rep.branch = "rank_le_one";
        for (const Face& F : facets(T.domain))
            rep.certificates.push_back({F, CertificateKind::rank_le_one, std::nullopt});
        return rep;
    }
    PreservationReport rep = detail::facet_scan(T, PairKind::parallel);
    rep.branch = "tea_equivalence";
    return rep;
}

namespace detail {

/* Exact decision of ker T ∩ Int_r F != {}: parametrize aff(F), solve the
 * linear system, and test the solution polytope for a point keeping every
 * inactive constraint strict. A constraint can exclude strict points only by
 * being tight on the whole polytope, so checking tightness at the vertex
 * barycenter is exact. */
inline bool kernel_meets_relint(const Operator& T, const Face& F) {
    if (T.rank == T.domain.dim()) return false;
    const PolyhedralSpace& X = T.domain;
    if (F.dim == 0) return is_zero_vec(Vec(apply(T, X.vertex(F.vertex_set[0]))));

    const AffineHull hull = solve_affine(face_points(X, F.vertex_set));
    const Eigen::Index k = static_cast<Eigen::Index>(hull.directions.size());
    Mat D(X.dim(), k);
    for (Eigen::Index j = 0; j < k; ++j) D.col(j) = hull.directions[static_cast<std::size_t>(j)];

    const auto sol = solve_linear(Mat(T.matrix * D), Vec(-(T.matrix * hull.base)));
    if (!sol) return false;
    const Vec z0 = hull.base + D * sol->particular;

    std::vector<Vec> inactive;
    for (std::size_t i = 0; i < X.dual_vertices().size(); ++i) {
        for (int sign : {1, -1}) {
            const SignedFunctional f{static_cast<int>(i), sign};
            if (!std::binary_search(F.active_functionals.begin(), F.active_functionals.end(), f))
                inactive.push_back(X.functional(f));
        }
    }

    if (sol->kernel.empty()) {
        for (const Vec& h : inactive)
            if (h.dot(z0) >= 1) return false;
        return true;
    }

    Mat M(X.dim(), static_cast<Eigen::Index>(sol->kernel.size()));
    for (std::size_t j = 0; j < sol->kernel.size(); ++j)
        M.col(static_cast<Eigen::Index>(j)) = D * sol->kernel[j];

    std::vector<Vec> rows;
    std::vector<Rational> rhs;
    for (const Vec& h : inactive) {
        rows.push_back(M.transpose() * h);
        rhs.push_back(1 - h.dot(z0));
    }
    const auto verts = dd::enumerate_vertices(rows, rhs);
    if (verts.empty()) return false;

    for (std::size_t i = 0; i < rows.size(); ++i) {
        bool always_tight = true;
        for (const Vec& s : verts)
            if (rows[i].dot(s) != rhs[i]) {
                always_tight = false;
                break;
            }
        if (always_tight) return false;
    }
    return true;
}

} // namespace detail

/* Dichotomy audit: on every face where the vertex images share a supporting
 * functional and are not all zero, the kernel must avoid the relative
 * interior. Returns the offending faces (expected none). */
inline std::vector<Face> kernel_face_check(const Operator& T) {
    std::vector<Face> violations;
    for (const Face& F : all_faces(T.domain)) {
        if (F.dim < 1) continue;
        if (detail::image_zero_on(T, F.vertex_set)) continue;
        if (!detail::common_image_functional(T, F.vertex_set)) continue;
        if (detail::kernel_meets_relint(T, F)) violations.push_back(F);
    }
    return violations;
}

/* For a bijective parallel preserver, each smooth cone Sm(f) maps into a
 * single smooth cone Sm(g); the map f -> g is read off facet barycenters and
 * cross-checked on random interior points. */
inline std::map<SignedFunctional, SignedFunctional> facet_image_map(const Operator& T) {
    if (!is_bijective(T)) throw NotBijective("facet_image_map: operator is not bijective");
    if (!preserves_parallel(T).preserves)
        throw NotPreserver("facet_image_map: operator does not preserve parallel pairs");
    std::map<SignedFunctional, SignedFunctional> out;
    Rng rng(874511);
    for (const Face& F : facets(T.domain)) {
        const SignedFunctional f = F.active_functionals.front();
        const auto s = support_set(T.codomain, Vec(apply(T, barycenter(T.domain, F))));
        if (s.functionals.size() != 1)
            throw MappingAmbiguous("facet image of " + format_vec(T.domain.functional(f)) +
                                   " is not smooth");
        const SignedFunctional g = s.functionals.front();
        for (int t = 0; t < 8; ++t) {
            Vec x = Vec::Zero(T.domain.dim());
            for (int id : F.vertex_set)
                x += Rational(rng.uniform(1, 9)) / Rational(rng.uniform(1, 9)) *
                     T.domain.vertex(id);
            const auto si = support_set(T.codomain, Vec(apply(T, x)));
            if (si.functionals.size() != 1 || !(si.functionals.front() == g))
                throw MappingAmbiguous("smooth cone of " + format_vec(T.domain.functional(f)) +
                                       " maps across smooth cones");
        }
        out.emplace(f, g);
    }
    return out;
}

/* |Ext J(x)| = |Ext J(Tx)| audit for bijective preservers between spaces with
 * equally many extreme functionals. */
inline bool support_count_law(const Operator& T, int samples) {
    if (!is_bijective(T) || !preserves_parallel(T).preserves)
        throw PreconditionFailed("support_count_law: needs a bijective parallel preserver");
    if (T.domain.dual_vertices().size() != T.codomain.dual_vertices().size())
        throw PreconditionFailed("support_count_law: extreme functional counts differ");
    const auto ok = [&](const Vec& x) {
        return support_set(T.domain, x).functionals.size() ==
               support_set(T.codomain, Vec(apply(T, x))).functionals.size();
    };
    for (const Vec& v : T.domain.vertices())
        if (!ok(v)) return false;
    for (const Face& F : facets(T.domain))
        if (!ok(barycenter(T.domain, F))) return false;
    Rng rng(330033);
    for (int t = 0; t < samples; ++t)
        if (!ok(rng.nonzero_vector(T.domain.dim()))) return false;
    return true;
}

/* For a TEA preserver of rank p, no point of smoothness order below p may lie
 * in the kernel; such points are the relative interiors of faces of dimension
 * above n-p. */
inline bool rank_smooth_kernel_check(const Operator& T) {
    if (!preserves_tea(T).preserves)
        throw PreconditionFailed("rank_smooth_kernel_check: needs a TEA preserver");
    if (T.rank == T.domain.dim()) return true;
    for (const Face& F : all_faces(T.domain)) {
        if (F.dim <= T.domain.dim() - T.rank) continue;
        if (detail::kernel_meets_relint(T, F)) return false;
    }
    return true;
}

/* Polyhedral isometry criterion: nonsingular and vertex set onto vertex set. */
inline bool is_isometry(const Operator& T) {
    if (T.domain.dim() != T.codomain.dim())
        throw DimensionMismatch("is_isometry: dimensions differ");
    if (T.rank != T.domain.dim()) return false;
    if (T.domain.vertices().size() != T.codomain.vertices().size()) return false;
    for (const Vec& v : T.domain.vertices())
        if (!T.codomain.vertex_id(Vec(apply(T, v)))) return false;
    return true;
}

/* Every ball vertex must carry strictly more supporting functionals than any
 * non-vertex sphere point; non-vertex support counts are the active counts of
 * the positive-dimensional faces. */
inline bool vertex_support_dominance(const PolyhedralSpace& X) {
    std::size_t min_vertex = std::numeric_limits<std::size_t>::max();
    for (const Vec& v : X.vertices())
        min_vertex = std::min(min_vertex, support_set(X, v).functionals.size());
    std::size_t max_face = 0;
    for (const Face& F : all_faces(X))
        if (F.dim >= 1) max_face = std::max(max_face, F.active_functionals.size());
    return min_vertex > max_face;
}

/* Harness for the isometry characterization: under vertex support dominance
 * and unit operator norm, "isometry" must coincide with "bijective parallel
 * preserver with equinormal vertex images". Expected to return true always. */
inline bool isometry_characterization_check(const Operator& T) {
    if (!vertex_support_dominance(T.domain))
        throw PreconditionFailed("isometry_characterization_check: domain lacks dominance");
    if (op_norm(T) != 1)
        throw PreconditionFailed("isometry_characterization_check: operator norm must be one");
    const bool lhs = T.domain.dim() == T.codomain.dim() && is_isometry(T);
    bool equinormal = true;
    const Rational first = norm(T.codomain, Vec(apply(T, T.domain.vertices().front())));
    for (const Vec& v : T.domain.vertices())
        if (norm(T.codomain, Vec(apply(T, v))) != first) {
            equinormal = false;
            break;
        }
    const bool rhs = is_bijective(T) && preserves_parallel(T).preserves && equinormal;
    return lhs == rhs;
}

/* Bijective parallel preservers cannot land in a space with more extreme
 * functionals. */
inline bool count_law_check(const Operator& T) {
    if (!is_bijective(T)) throw PreconditionFailed("count_law_check: operator is not bijective");
    if (!preserves_parallel(T).preserves)
        throw PreconditionFailed("count_law_check: operator does not preserve parallel pairs");
    return T.domain.dual_vertices().size() >= T.codomain.dual_vertices().size();
}

/* Sampled, non-exhaustive check that T carries eps-orthogonal pairs to
 * eps-orthogonal pairs: all vertex direction pairs plus seeded random pairs.
 * A zero image is trivially eps-orthogonal to everything. */
inline bool preserves_eps_orthogonality_sampled(const Operator& T, const Rational& eps,
                                                int trials, std::uint64_t seed) {
    const auto preserved_on = [&](const Vec& x, const Vec& y) {
        if (is_zero_vec(x)) return true;
        if (!is_eps_orthogonal(T.domain, x, y, eps)) return true;
        const Vec tx = apply(T, x);
        if (is_zero_vec(tx)) return true;
        return is_eps_orthogonal(T.codomain, tx, Vec(apply(T, y)), eps);
    };
    for (const Vec& v : T.domain.vertices())
        for (const Vec& w : T.domain.vertices())
            if (!preserved_on(v, w)) return false;
    Rng rng(seed);
    for (int t = 0; t < trials; ++t)
        if (!preserved_on(rng.nonzero_vector(T.domain.dim()), rng.vector(T.domain.dim())))
            return false;
    return true;
}

} // namespace polypar
