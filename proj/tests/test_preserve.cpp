#include <polypar/catalog.hpp>
#include <polypar/preserve.hpp>
#include <polypar/rng.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

using namespace polypar;

namespace {

Operator op(const PolyhedralSpace& X, const PolyhedralSpace& Y,
            const std::vector<std::string>& rows) {
    std::vector<Vec> r;
    r.reserve(rows.size());
    for (const auto& s : rows) r.push_back(parse_vec(s));
    return make_operator(X, Y, mat_from_rows(r));
}

Operator endo(const PolyhedralSpace& X, const std::vector<std::string>& rows) {
    return op(X, X, rows);
}

Operator random_bijective(const PolyhedralSpace& X, Rng& rng) {
    for (;;) {
        const Mat m = rng.matrix(X.dim(), X.dim(), 3, 3);
        if (rank(m) == X.dim()) return make_operator(X, X, m);
    }
}

Vec facet_cone_sample(const PolyhedralSpace& X, const Face& F, Rng& rng) {
    Vec x = Vec::Zero(X.dim());
    for (int id : F.vertex_set) x += rng.positive_rational(7, 7) * X.vertex(id);
    return x;
}

PolyhedralSpace notched_cross_4d() {
    std::vector<Vec> duals;
    for (int s2 : {1, -1})
        for (int s3 : {1, -1})
            for (int s4 : {1, -1})
                duals.push_back(vec_of({Rational(1), Rational(s2), Rational(s3), Rational(s4)}));
    duals.push_back(parse_vec("3,0,0,0"));
    duals.push_back(parse_vec("0,3,0,0"));
    return PolyhedralSpace::build(4, duals, "notched-cross-4");
}

} // namespace

TEST_CASE("operator construction, application and norm") {
    const auto l13 = catalog::make_l1(3);
    const auto li2 = catalog::make_linf(2);

    const auto id = endo(l13, {"1,0,0", "0,1,0", "0,0,1"});
    CHECK(id.rank == 3);
    CHECK(id.kernel.empty());
    CHECK(is_bijective(id));
    CHECK(op_norm(id) == 1);

    const auto rank1 = endo(l13, {"1,0,-1", "0,0,0", "1,0,-1"});
    CHECK(rank1.rank == 1);
    CHECK(rank1.kernel.size() == 2);
    CHECK(!is_bijective(rank1));
    CHECK(op_norm(rank1) == 2);
    CHECK(exact_eq(apply(rank1, parse_vec("2,1,1")), parse_vec("1,0,1")));

    const auto stretch = endo(li2, {"2,0", "0,1"});
    CHECK(op_norm(stretch) == 2);

    CHECK_THROWS_AS(op(l13, li2, {"1,0,0", "0,1,0", "0,0,1"}), DimensionMismatch);
    CHECK_THROWS_AS(apply(id, parse_vec("1,0")), DimensionMismatch);
}

TEST_CASE("identity preserves both pair kinds and certifies every facet by itself") {
    for (const auto& name : catalog::suite_space_names()) {
        const auto X = catalog::make_named(name);
        std::vector<Vec> rows;
        for (Eigen::Index i = 0; i < X.dim(); ++i) {
            Vec e = Vec::Zero(X.dim());
            e(i) = 1;
            rows.push_back(e);
        }
        const auto id = make_operator(X, X, mat_from_rows(rows));

        const auto tea = preserves_tea(id);
        REQUIRE(tea.preserves);
        CHECK(tea.branch == "facet_scan");
        CHECK(!tea.failing_facet);
        CHECK(!tea.counterexample);
        REQUIRE(tea.certificates.size() == facets(X).size());
        for (const auto& cert : tea.certificates) {
            CHECK(cert.kind == CertificateKind::common_functional);
            REQUIRE(cert.functional);
            CHECK(*cert.functional == cert.facet.active_functionals.front());
        }

        const auto par = preserves_parallel(id);
        CHECK(par.preserves);
        CHECK(par.branch == "tea_equivalence");
        CHECK(par.kind == PairKind::parallel);
    }
}

TEST_CASE("a rank-one map can preserve parallel pairs while breaking triangle equality") {
    const auto l13 = catalog::make_l1(3);
    const auto T = endo(l13, {"1,0,-1", "0,0,0", "1,0,-1"});

    const auto par = preserves_parallel(T);
    CHECK(par.preserves);
    CHECK(par.branch == "rank_le_one");
    REQUIRE(par.certificates.size() == facets(l13).size());
    for (const auto& cert : par.certificates) CHECK(cert.kind == CertificateKind::rank_le_one);

    const auto tea = preserves_tea(T);
    REQUIRE(!tea.preserves);
    REQUIRE(tea.failing_facet);
    REQUIRE(tea.counterexample);
    const auto& ce = *tea.counterexample;
    CHECK(ce.holds_before);
    CHECK(!ce.holds_after);
    CHECK(is_tea_direct(l13, ce.x, ce.y));
    CHECK(!is_tea_direct(l13, apply(T, ce.x), apply(T, ce.y)));

    // the classical broken pair for this map
    const Vec x = parse_vec("2,1,1");
    const Vec y = parse_vec("1,1,2");
    CHECK(is_tea_direct(l13, x, y));
    CHECK(!is_tea_direct(l13, apply(T, x), apply(T, y)));
}

TEST_CASE("coordinate projection onto the outer coordinates preserves both kinds") {
    const auto l13 = catalog::make_l1(3);
    const auto T = endo(l13, {"1,0,0", "0,0,0", "0,0,1"});
    CHECK(T.rank == 2);

    const auto tea = preserves_tea(T);
    REQUIRE(tea.preserves);
    for (const auto& cert : tea.certificates)
        CHECK(cert.kind == CertificateKind::common_functional);

    const auto par = preserves_parallel(T);
    CHECK(par.preserves);
    CHECK(par.branch == "tea_equivalence");
}

TEST_CASE("positive diagonal maps preserve triangle equality on the l1 ball") {
    const auto l13 = catalog::make_l1(3);
    const auto T = endo(l13, {"1,0,0", "0,2,0", "0,0,3"});
    CHECK(preserves_tea(T).preserves);
    CHECK(preserves_parallel(T).preserves);
    CHECK(!is_isometry(T));
}

TEST_CASE("reported counterexamples verify exactly, including across dimensions") {
    const auto li2 = catalog::make_linf(2);
    const auto l13 = catalog::make_l1(3);

    struct Case {
        Operator T;
        const PolyhedralSpace& X;
        const PolyhedralSpace& Y;
    };
    const std::vector<Case> cases = {
        {endo(li2, {"2,0", "0,1"}), li2, li2},
        {endo(li2, {"1,1", "0,1"}), li2, li2},
        {op(l13, li2, {"1,0,0", "0,1,0"}), l13, li2},
    };
    for (const auto& c : cases) {
        const auto rep = preserves_tea(c.T);
        REQUIRE(!rep.preserves);
        REQUIRE(rep.failing_facet);
        REQUIRE(rep.counterexample);
        CHECK(is_tea_direct(c.X, rep.counterexample->x, rep.counterexample->y));
        CHECK(!is_tea_direct(c.Y, apply(c.T, rep.counterexample->x),
                             apply(c.T, rep.counterexample->y)));
    }

    const auto stretch = endo(li2, {"2,0", "0,1"});
    const auto par = preserves_parallel(stretch);
    REQUIRE(!par.preserves);
    REQUIRE(par.counterexample);
    CHECK(is_parallel_direct(li2, par.counterexample->x, par.counterexample->y));
    CHECK(!is_parallel_direct(li2, apply(stretch, par.counterexample->x),
                              apply(stretch, par.counterexample->y)));
}

TEST_CASE("certificate functionals attain the image norm on the whole facet cone") {
    const auto l13 = catalog::make_l1(3);
    const auto li3 = catalog::make_linf(3);
    Rng perm_rng(71);
    std::vector<Operator> preservers = {
        endo(l13, {"1,0,0", "0,1,0", "0,0,1"}),
        endo(l13, {"1,0,0", "0,0,0", "0,0,1"}),
        endo(l13, {"1,0,0", "0,2,0", "0,0,3"}),
        make_operator(li3, li3, perm_rng.signed_permutation(3)),
    };
    Rng rng(1234);
    for (const auto& T : preservers) {
        const auto rep = preserves_tea(T);
        REQUIRE(rep.preserves);
        for (const auto& cert : rep.certificates) {
            if (cert.kind != CertificateKind::common_functional) continue;
            const Vec g = T.codomain.functional(*cert.functional);
            for (int t = 0; t < 30; ++t) {
                const Vec x = facet_cone_sample(T.domain, cert.facet, rng);
                const Vec tx = apply(T, x);
                CHECK(g.dot(tx) == norm(T.codomain, tx));
            }
        }
    }
}

TEST_CASE("bijective operators preserve triangle equality iff they preserve parallel pairs") {
    Rng rng(90210);
    for (const auto& name : {"l1:2", "linf:2", "hexagon"}) {
        const auto X = catalog::make_named(name);
        for (int t = 0; t < 40; ++t) {
            const auto T = random_bijective(X, rng);
            CHECK(preserves_tea(T).preserves == preserves_parallel(T).preserves);
        }
    }
}

TEST_CASE("kernel audit: certified faces with nonzero image never meet the kernel interior") {
    const auto l13 = catalog::make_l1(3);
    CHECK(kernel_face_check(endo(l13, {"1,0,0", "0,1,0", "0,0,1"})).empty());
    CHECK(kernel_face_check(endo(l13, {"1,0,0", "0,0,0", "0,0,1"})).empty());
    CHECK(kernel_face_check(endo(l13, {"1,0,-1", "0,0,0", "1,0,-1"})).empty());
    CHECK(kernel_face_check(endo(l13, {"1,0,0", "1,0,0", "1,0,0"})).empty());
    const auto li3 = catalog::make_linf(3);
    CHECK(kernel_face_check(endo(li3, {"1,0,0", "0,1,0", "0,0,0"})).empty());
}

TEST_CASE("kernel-interior decision is exact on a face where the kernel does cut through") {
    // for T(x,y,z) = (x-z, 0, x-z) the facet certificate fails, and indeed the
    // kernel passes straight through the facet interior at (1/3,1/3,1/3)
    const auto l13 = catalog::make_l1(3);
    const auto T = endo(l13, {"1,0,-1", "0,0,0", "1,0,-1"});
    const Vec bary = parse_vec("1/3,1/3,1/3");
    REQUIRE(is_zero_vec(Vec(apply(T, bary))));
    // the kernel is the plane x1 = x3; it crosses the interior of exactly the
    // facets whose functional weights the outer coordinates equally
    for (const Face& F : facets(l13)) {
        const Vec g = l13.functional(F.active_functionals.front());
        const bool hit = detail::kernel_meets_relint(T, F);
        CHECK(hit == (g(0) == g(2)));
    }
}

TEST_CASE("facet image map of bijective preservers") {
    const auto l13 = catalog::make_l1(3);

    const auto id = endo(l13, {"1,0,0", "0,1,0", "0,0,1"});
    const auto idmap = facet_image_map(id);
    REQUIRE(idmap.size() == 2 * l13.dual_vertices().size());
    for (const auto& [f, g] : idmap) CHECK(f == g);

    const auto diag = endo(l13, {"1,0,0", "0,2,0", "0,0,3"});
    for (const auto& [f, g] : facet_image_map(diag)) CHECK(f == g);

    const auto li3 = catalog::make_linf(3);
    Rng rng(5150);
    for (int t = 0; t < 10; ++t) {
        const Mat P = rng.signed_permutation(3);
        const auto T = make_operator(li3, li3, P);
        for (const auto& [f, g] : facet_image_map(T))
            CHECK(exact_eq(li3.functional(g), Vec(P * li3.functional(f))));
    }

    const auto li2 = catalog::make_linf(2);
    CHECK_THROWS_AS(facet_image_map(endo(li2, {"2,0", "0,1"})), NotPreserver);
    CHECK_THROWS_AS(facet_image_map(endo(l13, {"1,0,0", "0,0,0", "0,0,1"})), NotBijective);
}

TEST_CASE("support counts transfer under bijective preservers") {
    const auto l13 = catalog::make_l1(3);
    const auto li3 = catalog::make_linf(3);
    CHECK(support_count_law(endo(l13, {"1,0,0", "0,1,0", "0,0,1"}), 200));
    CHECK(support_count_law(endo(l13, {"1,0,0", "0,2,0", "0,0,3"}), 200));
    Rng rng(808);
    for (int t = 0; t < 5; ++t) {
        CHECK(support_count_law(make_operator(l13, l13, rng.signed_permutation(3)), 100));
        CHECK(support_count_law(make_operator(li3, li3, rng.signed_permutation(3)), 100));
    }
    CHECK_THROWS_AS(support_count_law(endo(l13, {"1,0,0", "2,0,0", "0,0,1"}), 10),
                    PreconditionFailed);
    const auto li2 = catalog::make_linf(2);
    CHECK_THROWS_AS(support_count_law(endo(li2, {"2,0", "0,1"}), 10), PreconditionFailed);
}

TEST_CASE("rank bound: no low-smoothness point lies in a preserver kernel") {
    const auto l13 = catalog::make_l1(3);
    CHECK(rank_smooth_kernel_check(endo(l13, {"1,0,0", "0,1,0", "0,0,1"})));
    CHECK(rank_smooth_kernel_check(endo(l13, {"1,0,0", "0,0,0", "0,0,1"})));
    CHECK(rank_smooth_kernel_check(endo(l13, {"1,0,0", "1,0,0", "1,0,0"})));
    const auto li2 = catalog::make_linf(2);
    CHECK_THROWS_AS(rank_smooth_kernel_check(endo(li2, {"2,0", "0,1"})), PreconditionFailed);
}

TEST_CASE("isometry recognition") {
    const auto l13 = catalog::make_l1(3);
    const auto li2 = catalog::make_linf(2);
    const auto l12 = catalog::make_l1(2);
    const auto hex = catalog::make_hexagon();

    Rng rng(4242);
    for (int t = 0; t < 10; ++t)
        CHECK(is_isometry(make_operator(l13, l13, rng.signed_permutation(3))));

    // the diamond-to-square rotation is an isometry between different balls
    CHECK(is_isometry(op(l12, li2, {"1,1", "1,-1"})));
    // a sixth-turn symmetry of the hexagonal ball
    CHECK(is_isometry(endo(hex, {"1/2,-1", "3/4,1/2"})));

    CHECK(!is_isometry(endo(li2, {"1,0", "0,1/2"})));
    CHECK(!is_isometry(endo(li2, {"1,1", "0,1"})));
    CHECK(!is_isometry(endo(l13, {"1,0,0", "0,1,0", "0,0,0"})));
    CHECK_THROWS_AS(is_isometry(op(l13, li2, {"1,0,0", "0,1,0"})), DimensionMismatch);
}

TEST_CASE("vertex support dominance across the catalog and its failure space") {
    for (const auto& name : catalog::suite_space_names())
        CHECK(vertex_support_dominance(catalog::make_named(name)));

    const auto notched = notched_cross_4d();
    CHECK(notched.vertices().size() == 36);
    CHECK(!vertex_support_dominance(notched));

    // the pinch: a vertex with only four supporting functionals, matching the
    // active count of the edge between the third and fourth basis vertices
    const auto vid = notched.vertex_id(parse_vec("1/3,1/3,1/3,0"));
    REQUIRE(vid);
    CHECK(support_set(notched, parse_vec("1/3,1/3,1/3,0")).functionals.size() == 4);
    std::size_t min_vertex = 1000;
    for (const Vec& v : notched.vertices())
        min_vertex = std::min(min_vertex, support_set(notched, v).functionals.size());
    std::size_t max_face = 0;
    for (const Face& F : all_faces(notched))
        if (F.dim >= 1) max_face = std::max(max_face, F.active_functionals.size());
    CHECK(min_vertex == 4);
    CHECK(max_face == 4);
}

TEST_CASE("isometry characterization harness") {
    const auto l13 = catalog::make_l1(3);
    const auto li2 = catalog::make_linf(2);
    const auto hex = catalog::make_hexagon();

    Rng rng(31337);
    for (int t = 0; t < 10; ++t)
        CHECK(isometry_characterization_check(
            make_operator(l13, l13, rng.signed_permutation(3))));
    CHECK(isometry_characterization_check(endo(hex, {"1/2,-1", "3/4,1/2"})));
    // unit-norm non-isometry: both sides of the equivalence must fail together
    CHECK(isometry_characterization_check(endo(li2, {"1,0", "0,1/2"})));

    CHECK_THROWS_AS(isometry_characterization_check(endo(li2, {"2,0", "0,1"})),
                    PreconditionFailed);
    const auto notched = notched_cross_4d();
    std::vector<Vec> rows;
    for (int i = 0; i < 4; ++i) {
        Vec e = Vec::Zero(4);
        e(i) = 1;
        rows.push_back(e);
    }
    CHECK_THROWS_AS(isometry_characterization_check(make_operator(notched, notched,
                                                                  mat_from_rows(rows))),
                    PreconditionFailed);
}

TEST_CASE("extreme functional count law for bijective preservers") {
    const auto l13 = catalog::make_l1(3);
    const auto l12 = catalog::make_l1(2);
    const auto li2 = catalog::make_linf(2);
    CHECK(count_law_check(endo(l13, {"1,0,0", "0,1,0", "0,0,1"})));
    CHECK(count_law_check(endo(l13, {"1,0,0", "0,2,0", "0,0,3"})));
    CHECK(count_law_check(op(l12, li2, {"1,1", "1,-1"})));
    CHECK_THROWS_AS(count_law_check(endo(l13, {"1,0,0", "0,0,0", "0,0,1"})),
                    PreconditionFailed);
    CHECK_THROWS_AS(count_law_check(endo(li2, {"2,0", "0,1"})), PreconditionFailed);
}

TEST_CASE("smooth points map to smooth points under bijective preservers") {
    const auto l13 = catalog::make_l1(3);
    Rng rng(60601);
    std::vector<Operator> preservers = {
        endo(l13, {"1,0,0", "0,1,0", "0,0,1"}),
        endo(l13, {"1,0,0", "0,2,0", "0,0,3"}),
        make_operator(l13, l13, rng.signed_permutation(3)),
    };
    for (const auto& T : preservers) {
        for (const Face& F : facets(T.domain)) {
            for (int t = 0; t < 20; ++t) {
                const Vec x = facet_cone_sample(T.domain, F, rng);
                REQUIRE(support_set(T.domain, x).functionals.size() == 1);
                CHECK(support_set(T.codomain, Vec(apply(T, x))).functionals.size() == 1);
            }
        }
    }
}

TEST_CASE("sampled approximate-orthogonality preservation agrees with the exact criterion") {
    const Rational eps = rat(1, 100);
    const auto l13 = catalog::make_l1(3);
    const auto li2 = catalog::make_linf(2);

    CHECK(preserves_eps_orthogonality_sampled(endo(l13, {"1,0,0", "0,1,0", "0,0,1"}), eps, 200,
                                              7));
    Rng rng(99);
    CHECK(preserves_eps_orthogonality_sampled(make_operator(l13, l13,
                                                            rng.signed_permutation(3)),
                                              eps, 200, 8));

    // operators breaking triangle equality also fail the sampled check here
    CHECK(!preserves_eps_orthogonality_sampled(endo(li2, {"2,0", "0,1"}), eps, 200, 9));
    CHECK(!preserves_eps_orthogonality_sampled(endo(l13, {"1,0,-1", "0,0,0", "1,0,-1"}), eps,
                                               200, 10));
}
