#include <polypar/io.hpp>
#include <polypar/suites.hpp>
#include <polypar/svg.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

using namespace polypar;

namespace {

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("spaces survive a json round trip") {
    for (const auto& name : catalog::suite_space_names()) {
        const auto X = catalog::make_named(name);
        const auto j = space_to_json(X);
        CHECK(j.contains("primal_vertices"));
        const auto Y = space_from_json(j);
        CHECK(Y.dim() == X.dim());
        CHECK(Y.name() == X.name());
        CHECK(detail::same_signed_vertex_sets(Y.dual_vertices(), X.dual_vertices()));
        CHECK(detail::same_signed_vertex_sets(Y.vertices(), X.vertices()));
    }
}

TEST_CASE("space json validation") {
    auto good = space_to_json(catalog::make_l1(2));
    CHECK_NOTHROW(space_from_json(good));

    auto j = good;
    j.erase("dim");
    CHECK_THROWS_AS(space_from_json(j), IoError);

    j = good;
    j.erase("dual_vertices");
    CHECK_THROWS_AS(space_from_json(j), IoError);

    j = good;
    j["name"] = 7;
    CHECK_THROWS_AS(space_from_json(j), IoError);

    j = good;
    j["dual_vertices"][0][0] = "not-a-number";
    CHECK_THROWS_AS(space_from_json(j), ParseError);

    j = good;
    j["dual_vertices"][0][0] = 5; // must be a rational string
    CHECK_THROWS_AS(space_from_json(j), IoError);

    // primal cross-validation must reject a tampered vertex
    j = good;
    j["primal_vertices"][0][0] = "17";
    CHECK_THROWS_AS(space_from_json(j), IoError);

    // and a dropped vertex
    j = good;
    j["primal_vertices"].erase(0);
    CHECK_THROWS_AS(space_from_json(j), IoError);
}

TEST_CASE("space files on disk") {
    const TempFile tmp("io_test_space.json");
    const auto X = catalog::make_hexagon();
    save_space(X, tmp.path);
    const auto Y = load_space(tmp.path);
    CHECK(Y.name() == "hexagon");
    CHECK(detail::same_signed_vertex_sets(Y.dual_vertices(), X.dual_vertices()));

    CHECK_THROWS_AS(load_space("definitely_missing_space.json"), IoError);

    const TempFile bad("io_test_bad.json");
    std::ofstream(bad.path) << "{ not json";
    CHECK_THROWS_AS(load_space(bad.path), IoError);
}

TEST_CASE("space references resolve to catalog entries, composites and files") {
    CHECK(resolve_space("l1:3").dim() == 3);
    CHECK(resolve_space("linf:2").name() == "linf:2");
    CHECK(resolve_space("hexagon").dim() == 2);

    const auto S = resolve_space("l1(l1:2,linf:2)");
    CHECK(S.dim() == 4);
    CHECK(S.name() == "l1(l1:2,linf:2)");
    // the l1-sum norm adds the factor norms
    CHECK(norm(S, parse_vec("1,1,1,1")) == norm(catalog::make_l1(2), parse_vec("1,1")) +
                                               norm(catalog::make_linf(2), parse_vec("1,1")));

    const auto N = resolve_space("linf(l1:2,l1(l1:2,linf:2))");
    CHECK(N.dim() == 6);

    const TempFile tmp("io_test_ref_space.json");
    save_space(catalog::make_l1(2), tmp.path);
    CHECK(resolve_space(tmp.path).dim() == 2);

    CHECK_THROWS_AS(resolve_space("no-such-space"), IoError);
}

TEST_CASE("operator files load with resolved spaces") {
    std::vector<Vec> rows = {parse_vec("1,0,-1"), parse_vec("0,0,0"), parse_vec("1,0,-1")};
    const auto j = operator_to_json("l1:3", "l1:3", mat_from_rows(rows));

    const TempFile tmp("io_test_operator.json");
    std::ofstream(tmp.path) << j.dump(2);
    const auto T = load_operator(tmp.path);
    CHECK(T.rank == 1);
    CHECK(T.domain.name() == "l1:3");
    CHECK(exact_eq(apply(T, parse_vec("2,1,1")), parse_vec("1,0,1")));

    auto bad = j;
    bad.erase("matrix");
    CHECK_THROWS_AS(operator_from_json(bad), IoError);

    bad = j;
    bad["domain"] = "linf:2"; // 3-column matrix against a 2-dimensional domain
    CHECK_THROWS_AS(operator_from_json(bad), DimensionMismatch);

    bad = j;
    bad["matrix"][0] = nlohmann::json::array({"1", "0"});
    CHECK_THROWS_AS(operator_from_json(bad), DimensionMismatch);
}

TEST_CASE("preservation reports render as text") {
    const auto l13 = catalog::make_l1(3);
    std::vector<Vec> rows = {parse_vec("1,0,-1"), parse_vec("0,0,0"), parse_vec("1,0,-1")};
    const auto T = make_operator(l13, l13, mat_from_rows(rows));

    const auto tea_text = report_to_text(T, preserves_tea(T));
    CHECK(contains(tea_text, "pair kind: triangle equality"));
    CHECK(contains(tea_text, "preserves: no"));
    CHECK(contains(tea_text, "failing facet:"));
    CHECK(contains(tea_text, "counterexample:"));
    CHECK(contains(tea_text, "pair before: holds"));
    CHECK(contains(tea_text, "image pair after: fails"));

    const auto par_text = report_to_text(T, preserves_parallel(T));
    CHECK(contains(par_text, "pair kind: parallelism"));
    CHECK(contains(par_text, "preserves: yes"));
    CHECK(contains(par_text, "rank <= 1"));

    std::vector<Vec> id_rows = {parse_vec("1,0,0"), parse_vec("0,1,0"), parse_vec("0,0,1")};
    const auto I = make_operator(l13, l13, mat_from_rows(id_rows));
    const auto id_text = report_to_text(I, preserves_tea(I));
    CHECK(contains(id_text, "preserves: yes"));
    CHECK(contains(id_text, "common functional"));
}

TEST_CASE("two-dimensional balls render to svg") {
    const auto square = render_ball_svg(catalog::make_linf(2));
    CHECK(contains(square, "<svg"));
    CHECK(contains(square, "<polygon"));
    CHECK(contains(square, "(1,1)"));
    CHECK(contains(square, "(-1,1)"));
    CHECK(contains(square, "[1,0]")); // facet functional label

    CHECK(contains(render_ball_svg(catalog::make_l1(2)), "(1,0)"));
    CHECK(contains(render_ball_svg(catalog::make_hexagon()), "(1,1/2)"));

    CHECK_THROWS_AS(render_ball_svg(catalog::make_l1(3)), UnsupportedDimension);

    const TempFile tmp("io_test_ball.svg");
    write_ball_svg(catalog::make_linf(2), tmp.path);
    std::ifstream in(tmp.path);
    REQUIRE(in.good());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(contains(content, "</svg>"));
}

TEST_CASE("validation suites pass under reduced workloads") {
    SuiteConfig cfg;
    cfg.seed = 424242;
    cfg.trials = 3;
    for (const auto& name : suite_names()) {
        const auto res = run_suite(name, cfg);
        INFO(name);
        for (const auto& line : res.lines) INFO(line);
        CHECK(res.passed);
        CHECK(!res.lines.empty());
    }
    CHECK_THROWS_AS(run_suite("not-a-suite", cfg), UnknownSuite);
}
