#pragma once

#include "io.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace polypar {

struct SuiteConfig {
    std::uint64_t seed = 20260814;
    int trials = 0; // 0 keeps each suite's default workload
    Rational eps = rat(1, 100);
    double tol = 1e-9;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> lines; // one per verified property

    void note(const std::string& property, std::size_t checked, std::size_t failures) {
        std::ostringstream os;
        os << property << ": checked " << checked << ", failures " << failures;
        lines.push_back(os.str());
        if (failures > 0) passed = false;
    }
};

namespace detail {

inline int suite_count(const SuiteConfig& cfg, int fallback) {
    return cfg.trials > 0 ? cfg.trials : fallback;
}

inline Operator random_operator(const PolyhedralSpace& X, const PolyhedralSpace& Y, Rng& rng) {
    Mat m(Y.dim(), X.dim());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.rational(3, 3);
    return make_operator(X, Y, m);
}

inline Operator random_bijective_operator(const PolyhedralSpace& X, Rng& rng) {
    for (;;) {
        Mat m(X.dim(), X.dim());
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.rational(3, 3);
        if (rank(m) == X.dim()) return make_operator(X, X, m);
    }
}

inline Operator named_endomorphism(const PolyhedralSpace& X,
                                   const std::vector<std::string>& rows) {
    std::vector<Vec> r;
    for (const auto& s : rows) r.push_back(parse_vec(s));
    return make_operator(X, X, mat_from_rows(r));
}

/* Shared operator corpus: the worked examples, symmetries, degenerate maps,
 * and seeded random operators across several space pairs. */
inline std::vector<Operator> operator_corpus(const SuiteConfig& cfg, int random_per_pair) {
    const auto l12 = catalog::make_l1(2);
    const auto l13 = catalog::make_l1(3);
    const auto li2 = catalog::make_linf(2);
    const auto li3 = catalog::make_linf(3);
    const auto hex = catalog::make_hexagon();

    std::vector<Operator> ops;
    for (const auto* X : {&l12, &li2, &hex}) {
        std::vector<Vec> rows = {parse_vec("1,0"), parse_vec("0,1")};
        ops.push_back(make_operator(*X, *X, mat_from_rows(rows)));
    }
    for (const auto* X : {&l13, &li3}) {
        std::vector<Vec> rows = {parse_vec("1,0,0"), parse_vec("0,1,0"), parse_vec("0,0,1")};
        ops.push_back(make_operator(*X, *X, mat_from_rows(rows)));
    }
    ops.push_back(named_endomorphism(l13, {"1,0,-1", "0,0,0", "1,0,-1"}));
    ops.push_back(named_endomorphism(l13, {"1,0,0", "0,0,0", "0,0,1"}));
    ops.push_back(named_endomorphism(l13, {"1,0,0", "2,0,0", "0,0,1"}));
    ops.push_back(named_endomorphism(l13, {"1,0,0", "0,2,0", "0,0,3"}));
    ops.push_back(named_endomorphism(l13, {"1,0,0", "1,0,0", "1,0,0"}));
    ops.push_back(named_endomorphism(l13, {"0,0,0", "0,0,0", "0,0,0"}));
    ops.push_back(named_endomorphism(li2, {"2,0", "0,1"}));
    ops.push_back(named_endomorphism(li2, {"1,1", "0,1"}));
    ops.push_back(named_endomorphism(li2, {"1,0", "0,1/2"}));
    ops.push_back(named_endomorphism(hex, {"1/2,-1", "3/4,1/2"}));
    {
        std::vector<Vec> rows = {parse_vec("1,1"), parse_vec("1,-1")};
        ops.push_back(make_operator(l12, li2, mat_from_rows(rows)));
    }
    {
        std::vector<Vec> rows = {parse_vec("1,0,0"), parse_vec("0,1,0")};
        ops.push_back(make_operator(l13, li2, mat_from_rows(rows)));
    }

    Rng rng(cfg.seed ^ 0xc0ffeeULL);
    for (int t = 0; t < 5; ++t) {
        ops.push_back(make_operator(l13, l13, rng.signed_permutation(3)));
        ops.push_back(make_operator(li3, li3, rng.signed_permutation(3)));
    }
    // random rank-one maps u f^T
    for (int t = 0; t < 10; ++t) {
        const Vec u = rng.nonzero_vector(3);
        const Vec f = rng.nonzero_vector(3);
        Mat m(3, 3);
        for (Eigen::Index r = 0; r < 3; ++r)
            for (Eigen::Index c = 0; c < 3; ++c) m(r, c) = u(r) * f(c);
        ops.push_back(make_operator(l13, l13, m));
    }
    const std::vector<std::pair<const PolyhedralSpace*, const PolyhedralSpace*>> pairs = {
        {&l13, &l13}, {&li3, &li3}, {&li2, &hex}, {&hex, &hex}, {&l12, &li2}, {&l13, &li2}};
    for (const auto& [X, Y] : pairs)
        for (int t = 0; t < random_per_pair; ++t) ops.push_back(random_operator(*X, *Y, rng));
    return ops;
}

inline Vec random_facet_cone_point(const PolyhedralSpace& X, const Face& F, Rng& rng) {
    Vec x = Vec::Zero(X.dim());
    for (int id : F.vertex_set) x += rng.positive_rational(7, 7) * X.vertex(id);
    return x;
}

} // namespace detail

/* Direct and support-functional pair tests must coincide on random pairs. */
inline SuiteResult suite_prop21(const SuiteConfig& cfg) {
    SuiteResult res{"prop21"};
    const int n = detail::suite_count(cfg, 10000);
    for (const auto& name : catalog::suite_space_names()) {
        const auto X = catalog::make_named(name);
        Rng rng(cfg.seed + std::hash<std::string>{}(name));
        std::size_t failures = 0;
        for (int t = 0; t < n; ++t) {
            const Vec x = rng.nonzero_vector(X.dim());
            const Vec y = rng.nonzero_vector(X.dim());
            const auto tea = is_tea_functional(X, x, y);
            if (tea.holds != is_tea_direct(X, x, y)) ++failures;
            const auto par = is_parallel_functional(X, x, y);
            if (par.holds != is_parallel_direct(X, x, y)) ++failures;
            if (tea.holds) {
                const Vec g = X.functional(*tea.witness_functional);
                if (g.dot(x) != norm(X, x) || g.dot(y) != norm(X, y)) ++failures;
            }
        }
        res.note("functional equivalence on " + name, static_cast<std::size_t>(n), failures);
    }
    return res;
}

/* Sum-rule verdicts must match direct tests on explicitly built sum spaces. */
inline SuiteResult suite_sums(const SuiteConfig& cfg) {
    SuiteResult res{"sums"};
    const int n = detail::suite_count(cfg, 2000);
    const auto l12 = catalog::make_l1(2);
    const auto li2 = catalog::make_linf(2);
    const auto hex = catalog::make_hexagon();
    const std::vector<std::pair<const PolyhedralSpace*, const PolyhedralSpace*>> factors = {
        {&l12, &l12}, {&l12, &li2}, {&li2, &hex}};

    std::size_t l1_fail = 0, linf_fail = 0, p_fail = 0, checked = 0;
    Rng rng(cfg.seed ^ 0x5105ULL);
    for (const auto& [Xp, Yp] : factors) {
        const auto& X = *Xp;
        const auto& Y = *Yp;
        const auto S1 = sum_l1(X, Y);
        const auto Si = sum_linf(X, Y);
        for (int t = 0; t < n; ++t) {
            const SumPoint z1{rng.nonzero_vector(X.dim()), rng.nonzero_vector(Y.dim())};
            const SumPoint z2{rng.nonzero_vector(X.dim()), rng.nonzero_vector(Y.dim())};
            const Vec c1 = concat(z1.left, z1.right);
            const Vec c2 = concat(z2.left, z2.right);
            ++checked;
            for (PairKind kind : {PairKind::tea, PairKind::parallel}) {
                const bool direct1 = kind == PairKind::tea ? is_tea_direct(S1, c1, c2)
                                                           : is_parallel_direct(S1, c1, c2);
                if (l1_sum_pair_rules(X, Y, z1, z2, kind).holds != direct1) ++l1_fail;
                const bool directi = kind == PairKind::tea ? is_tea_direct(Si, c1, c2)
                                                           : is_parallel_direct(Si, c1, c2);
                if (linf_sum_pair_rules(X, Y, z1, z2, kind).holds != directi) ++linf_fail;
                // componentwise necessity for finite p > 1
                for (double p : {1.5, 2.0, 3.0}) {
                    const auto v = p_sum_pair_test(X, Y, p, z1, z2, kind, cfg.tol);
                    const bool comp =
                        (kind == PairKind::tea
                             ? is_tea_direct(X, z1.left, z2.left) &&
                                   is_tea_direct(Y, z1.right, z2.right)
                             : is_parallel_direct(X, z1.left, z2.left) &&
                                   is_parallel_direct(Y, z1.right, z2.right));
                    if (v.holds && !comp) ++p_fail;
                }
            }
        }
    }
    res.note("l1-sum rules vs direct", checked * 2, l1_fail);
    res.note("linf-sum rules vs direct", checked * 2, linf_fail);
    res.note("p-sum componentwise necessity", checked * 6, p_fail);
    return res;
}

/* The facet criterion must agree with brute-force pair checking. */
inline SuiteResult suite_facet_oracle(const SuiteConfig& cfg) {
    SuiteResult res{"facet-oracle"};
    const int ops = detail::suite_count(cfg, 100);
    const int cone_pairs = cfg.trials > 0 ? cfg.trials * 10 : 10000;
    for (const auto& name : {"l1:3", "linf:3"}) {
        const auto X = catalog::make_named(name);
        const auto faces = facets(X);
        Rng rng(cfg.seed + std::hash<std::string>{}(name) * 3);
        std::size_t disagreements = 0;
        for (int t = 0; t < ops; ++t) {
            const auto T = detail::random_operator(X, X, rng);
            const bool verdict = preserves_tea(T).preserves;
            bool broken = false;
            const auto check = [&](const Vec& a, const Vec& b) {
                if (broken) return;
                if (is_tea_direct(X, a, b) &&
                    !is_tea_direct(X, Vec(apply(T, a)), Vec(apply(T, b))))
                    broken = true;
            };
            const auto& verts = X.vertices();
            for (std::size_t i = 0; i < verts.size() && !broken; ++i)
                for (std::size_t j = i; j < verts.size() && !broken; ++j)
                    check(verts[i], verts[j]);
            for (int s = 0; s < cone_pairs && !broken; ++s) {
                const auto& F = faces[static_cast<std::size_t>(
                    rng.uniform(0, static_cast<int>(faces.size()) - 1))];
                check(detail::random_facet_cone_point(X, F, rng),
                      detail::random_facet_cone_point(X, F, rng));
            }
            if (verdict == broken) ++disagreements;
        }
        res.note(std::string("facet criterion vs brute force on ") + name,
                 static_cast<std::size_t>(ops), disagreements);
    }
    return res;
}

/* Preserving triangle equality implies preserving parallel pairs. */
inline SuiteResult suite_prop210(const SuiteConfig& cfg) {
    SuiteResult res{"prop210"};
    const auto corpus = detail::operator_corpus(cfg, detail::suite_count(cfg, 40));
    std::size_t preservers = 0, failures = 0;
    for (const auto& T : corpus) {
        if (!preserves_tea(T).preserves) continue;
        ++preservers;
        if (!preserves_parallel(T).preserves) ++failures;
    }
    res.note("tea preservation implies parallel preservation (" +
                 std::to_string(corpus.size()) + " operators)",
             preservers, failures);
    return res;
}

/* For bijective operators the two preservation notions coincide. */
inline SuiteResult suite_corchar(const SuiteConfig& cfg) {
    SuiteResult res{"corchar"};
    const int n = detail::suite_count(cfg, 200);
    for (const auto& name : catalog::suite_space_names()) {
        const auto X = catalog::make_named(name);
        Rng rng(cfg.seed + std::hash<std::string>{}(name) * 7);
        std::size_t failures = 0;
        for (int t = 0; t < n; ++t) {
            const auto T = detail::random_bijective_operator(X, rng);
            if (preserves_tea(T).preserves != preserves_parallel(T).preserves) ++failures;
        }
        res.note("bijective equivalence on " + name, static_cast<std::size_t>(n), failures);
    }
    return res;
}

/* Certified preservers must keep their kernel off every certified face
 * interior. */
inline SuiteResult suite_intn0(const SuiteConfig& cfg) {
    SuiteResult res{"intn0"};
    const auto corpus = detail::operator_corpus(cfg, detail::suite_count(cfg, 40));
    std::size_t preservers = 0, failures = 0;
    for (const auto& T : corpus) {
        if (!preserves_tea(T).preserves) continue;
        ++preservers;
        if (!kernel_face_check(T).empty()) ++failures;
    }
    res.note("kernel-versus-face dichotomy on certified preservers", preservers, failures);
    return res;
}

/* Bijective parallel preservers cannot gain extreme functionals; in
 * particular none exist from linf:2 into the hexagon space. */
inline SuiteResult suite_distinct(const SuiteConfig& cfg) {
    SuiteResult res{"distinct"};
    const auto corpus = detail::operator_corpus(cfg, detail::suite_count(cfg, 40));
    std::size_t preservers = 0, failures = 0;
    for (const auto& T : corpus) {
        if (!is_bijective(T) || !preserves_parallel(T).preserves) continue;
        ++preservers;
        if (!count_law_check(T)) ++failures;
    }
    res.note("count law on certified bijective preservers", preservers, failures);

    const auto li2 = catalog::make_linf(2);
    const auto hex = catalog::make_hexagon();
    Rng rng(cfg.seed ^ 0xd15cULL);
    const int n = detail::suite_count(cfg, 2000);
    std::size_t found = 0;
    for (int t = 0; t < n; ++t) {
        const auto T = detail::random_operator(li2, hex, rng);
        if (is_bijective(T) && preserves_parallel(T).preserves) ++found;
    }
    res.note("bijective preservers found into a larger dual (expect none)",
             static_cast<std::size_t>(n), found);
    return res;
}

/* Signed permutations are isometries; support counts must transfer. */
inline SuiteResult suite_cardpreserve(const SuiteConfig& cfg) {
    SuiteResult res{"cardpreserve"};
    const int n = detail::suite_count(cfg, 100);
    for (const auto& name : {"l1:3", "linf:3"}) {
        const auto X = catalog::make_named(name);
        Rng rng(cfg.seed + std::hash<std::string>{}(name) * 11);
        std::size_t failures = 0;
        for (int t = 0; t < n; ++t) {
            const auto T = make_operator(X, X, rng.signed_permutation(3));
            if (!support_count_law(T, 200)) ++failures;
        }
        res.note(std::string("support count law on ") + name, static_cast<std::size_t>(n),
                 failures);
    }
    return res;
}

/* Every relative-interior point decomposes into unit vectors averaging to it,
 * spanning one more dimension than the face. */
inline SuiteResult suite_pcara(const SuiteConfig& cfg) {
    SuiteResult res{"pcara"};
    const int extra = detail::suite_count(cfg, 3);
    for (const auto& name : catalog::suite_space_names()) {
        const auto X = catalog::make_named(name);
        Rng rng(cfg.seed + std::hash<std::string>{}(name) * 13);
        std::size_t checked = 0, failures = 0;
        for (const Face& F : all_faces(X)) {
            if (F.dim < 1) continue;
            std::vector<Vec> points = {barycenter(X, F)};
            for (int t = 0; t < extra; ++t) {
                Vec x = detail::random_facet_cone_point(X, F, rng);
                points.push_back(Vec(x / norm(X, x)));
            }
            for (const Vec& x : points) {
                if (!in_relative_interior(X, F, x)) continue;
                ++checked;
                try {
                    const auto parts = decompose_interior_point(X, F, x);
                    Vec avg = Vec::Zero(X.dim());
                    for (const Vec& u : parts) {
                        if (norm(X, u) != 1) ++failures;
                        avg += u;
                    }
                    if (!exact_eq(Vec(avg / Rational(static_cast<long>(parts.size()))), x))
                        ++failures;
                    if (static_cast<int>(parts.size()) != F.dim + 1) ++failures;
                } catch (const Error&) {
                    ++failures;
                }
            }
        }
        res.note("interior decomposition on " + name, checked, failures);
    }
    return res;
}

/* A preserver of rank p keeps all points of smoothness order below p out of
 * its kernel. */
inline SuiteResult suite_rank_smooth(const SuiteConfig& cfg) {
    SuiteResult res{"rank-smooth"};
    const auto corpus = detail::operator_corpus(cfg, detail::suite_count(cfg, 40));
    std::size_t preservers = 0, failures = 0;
    for (const auto& T : corpus) {
        if (!preserves_tea(T).preserves) continue;
        ++preservers;
        if (!rank_smooth_kernel_check(T)) ++failures;
    }
    res.note("rank-smoothness kernel bound on certified preservers", preservers, failures);
    return res;
}

/* Numerical index one iff every sphere point is parallel to every ball
 * vertex; checked against the functional-value criterion. */
inline SuiteResult suite_index_one(const SuiteConfig& cfg) {
    SuiteResult res{"index-one"};
    const int samples = detail::suite_count(cfg, 1000);
    const std::map<std::string, bool> expected = {{"l1:2", true},
                                                  {"l1:3", true},
                                                  {"linf:2", true},
                                                  {"linf:3", true},
                                                  {"hexagon", false}};
    for (const auto& [name, want] : expected) {
        const auto X = catalog::make_named(name);
        std::size_t failures = 0;
        const bool fast = has_numerical_index_one(X);
        if (fast != want) ++failures;

        bool cross = true;
        for (const Vec& v : X.vertices()) {
            for (const Vec& w : X.vertices())
                if (!is_parallel_direct(X, v, w)) cross = false;
        }
        Rng rng(cfg.seed + std::hash<std::string>{}(name) * 17);
        for (int t = 0; t < samples && cross; ++t) {
            const Vec x = rng.nonzero_vector(X.dim());
            for (const Vec& v : X.vertices())
                if (!is_parallel_direct(X, x, v)) {
                    cross = false;
                    break;
                }
        }
        if (cross != fast) ++failures;
        res.note("index-one criterion vs parallel-pair formulation on " + name,
                 static_cast<std::size_t>(samples), failures);
    }
    return res;
}

/* Operators passing the sampled eps-orthogonality check must be certified TEA
 * preservers (sampling-based, non-exhaustive on the premise side). */
inline SuiteResult suite_eps_orth(const SuiteConfig& cfg) {
    SuiteResult res{"eps-orth"};
    const auto corpus = detail::operator_corpus(cfg, detail::suite_count(cfg, 40));
    std::size_t passing = 0, failures = 0;
    int i = 0;
    for (const auto& T : corpus) {
        ++i;
        if (!preserves_eps_orthogonality_sampled(T, cfg.eps, 120,
                                                 cfg.seed + static_cast<std::uint64_t>(i)))
            continue;
        ++passing;
        if (!preserves_tea(T).preserves) ++failures;
    }
    res.note("sampled eps-orthogonality preservation implies tea preservation (" +
                 std::to_string(corpus.size()) + " operators, non-exhaustive sampling)",
             passing, failures);
    return res;
}

/* Polar of the polar returns the original vertex set exactly. */
inline SuiteResult suite_bipolar(const SuiteConfig& cfg) {
    SuiteResult res{"bipolar"};
    (void)cfg;
    for (const auto& name : catalog::suite_space_names()) {
        const auto X = catalog::make_named(name);
        std::size_t failures = 0;
        std::vector<Vec> signed_duals;
        for (const Vec& g : X.dual_vertices()) {
            signed_duals.push_back(g);
            signed_duals.push_back(-g);
        }
        const auto P = PolyhedralSpace::build(static_cast<int>(X.dim()), X.vertices(),
                                              X.name() + "-polar");
        if (!detail::same_signed_vertex_sets(P.vertices(), signed_duals)) ++failures;
        const auto PP = PolyhedralSpace::build(static_cast<int>(X.dim()), P.vertices(),
                                               X.name() + "-bipolar");
        if (!detail::same_signed_vertex_sets(PP.vertices(), X.vertices())) ++failures;
        res.note("bipolar round trip on " + name, 2, failures);
    }
    return res;
}

/* Isometry characterization harness: all signed permutations of l1:3 plus
 * seeded random norm-one bijective operators. */
inline SuiteResult suite_isometry(const SuiteConfig& cfg) {
    SuiteResult res{"isometry"};
    const auto l13 = catalog::make_l1(3);
    std::size_t checked = 0, failures = 0;

    if (!vertex_support_dominance(l13)) failures += 1;
    res.note("vertex support dominance on l1:3", 1, failures);

    std::size_t harness_failures = 0;
    std::vector<int> perm = {0, 1, 2};
    do {
        for (int mask = 0; mask < 8; ++mask) {
            Mat m = Mat::Zero(3, 3);
            for (int r = 0; r < 3; ++r)
                m(r, perm[static_cast<std::size_t>(r)]) = (mask >> r) & 1 ? -1 : 1;
            const auto T = make_operator(l13, l13, m);
            ++checked;
            if (!is_isometry(T) || !isometry_characterization_check(T)) ++harness_failures;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    const int total = std::max(detail::suite_count(cfg, 100), static_cast<int>(checked));
    Rng rng(cfg.seed ^ 0x150ULL);
    while (checked < static_cast<std::size_t>(total)) {
        auto T = detail::random_bijective_operator(l13, rng);
        const Rational c = op_norm(T);
        T = make_operator(l13, l13, Mat((Rational(1) / c) * T.matrix));
        ++checked;
        if (op_norm(T) != 1 || !isometry_characterization_check(T)) ++harness_failures;
    }
    res.note("isometry characterization on norm-one bijective operators", checked,
             harness_failures);
    return res;
}

inline std::vector<std::string> suite_names() {
    return {"prop21",  "sums",         "facet-oracle", "prop210",  "corchar",
            "intn0",   "distinct",     "cardpreserve", "pcara",    "rank-smooth",
            "index-one", "eps-orth",   "bipolar",      "isometry"};
}

inline SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg = {}) {
    if (name == "all") {
        SuiteResult agg{"all"};
        for (const auto& sub : suite_names()) {
            const auto r = run_suite(sub, cfg);
            for (const auto& line : r.lines) agg.lines.push_back(sub + " | " + line);
            agg.passed = agg.passed && r.passed;
        }
        return agg;
    }
    if (name == "prop21") return suite_prop21(cfg);
    if (name == "sums") return suite_sums(cfg);
    if (name == "facet-oracle") return suite_facet_oracle(cfg);
    if (name == "prop210") return suite_prop210(cfg);
    if (name == "corchar") return suite_corchar(cfg);
    if (name == "intn0") return suite_intn0(cfg);
    if (name == "distinct") return suite_distinct(cfg);
    if (name == "cardpreserve") return suite_cardpreserve(cfg);
    if (name == "pcara") return suite_pcara(cfg);
    if (name == "rank-smooth") return suite_rank_smooth(cfg);
    if (name == "index-one") return suite_index_one(cfg);
    if (name == "eps-orth") return suite_eps_orth(cfg);
    if (name == "bipolar") return suite_bipolar(cfg);
    if (name == "isometry") return suite_isometry(cfg);
    throw UnknownSuite("unknown suite: " + name);
}

} // namespace polypar
