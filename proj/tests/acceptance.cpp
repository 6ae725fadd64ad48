// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
// Everything here is exact rational arithmetic unless a tolerance is stated.

#include <polypar/catalog.hpp>
#include <polypar/pairs.hpp>
#include <polypar/preserve.hpp>
#include <polypar/rng.hpp>
#include <polypar/sums.hpp>
#include <polypar/suites.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace polypar;

namespace {

int g_failures = 0;
std::vector<std::string> g_detail;

void expect(bool ok, const std::string& what) {
    if (!ok) g_detail.push_back("  expectation failed: " + what);
}

void criterion(int number, const std::string& label, const std::function<void()>& body) {
    g_detail.clear();
    try {
        body();
    } catch (const std::exception& e) {
        g_detail.push_back(std::string("  exception: ") + e.what());
    }
    const bool ok = g_detail.empty();
    if (!ok) ++g_failures;
    std::cout << "criterion " << number << " (" << label << "): " << (ok ? "PASS" : "FAIL")
              << '\n';
    for (const auto& line : g_detail) std::cout << line << '\n';
}

Operator endo(const PolyhedralSpace& X, const std::vector<std::string>& rows) {
    Mat m(static_cast<Eigen::Index>(rows.size()), X.dim());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const Vec v = parse_vec(rows[static_cast<std::size_t>(r)]);
        m.row(r) = v.transpose();
    }
    return make_operator(X, X, m);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void run_suite_criterion(const std::string& names_label,
                         const std::vector<std::string>& suite_list) {
    for (const auto& name : suite_list) {
        const auto res = run_suite(name, SuiteConfig{});
        if (!res.passed) {
            for (const auto& line : res.lines) g_detail.push_back("  " + name + " | " + line);
            g_detail.push_back("  suite " + name + " failed");
        }
    }
    (void)names_label;
}

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto li2 = catalog::make_linf(2);
    const auto l13 = catalog::make_l1(3);
    const auto l12 = catalog::make_l1(2);

    // a. pair verdicts in linf:2, direct and functional routes
    const auto pair_both = [&](const PolyhedralSpace& X, const char* xs, const char* ys,
                               PairKind kind, bool want) {
        const Vec x = parse_vec(xs), y = parse_vec(ys);
        const bool direct =
            kind == PairKind::tea ? is_tea_direct(X, x, y) : is_parallel_direct(X, x, y);
        const auto fn =
            kind == PairKind::tea ? is_tea_functional(X, x, y) : is_parallel_functional(X, x, y);
        expect(direct == want && fn.holds == want,
               std::string("pair (") + xs + "),(" + ys + ") expected " +
                   (want ? "holds" : "fails"));
    };
    pair_both(li2, "1,0", "1,1", PairKind::parallel, true);
    pair_both(li2, "1,0", "0,1", PairKind::parallel, false);
    pair_both(li2, "1,1", "1,-1", PairKind::tea, true);
    pair_both(li2, "1,0", "1,1/2", PairKind::tea, true);

    // b. T(x,y,z) = (x-z, 0, x-z) on l1:3
    {
        const auto T = endo(l13, {"1,0,-1", "0,0,0", "1,0,-1"});
        expect(T.rank == 1, "rank(T) == 1");
        expect(preserves_parallel(T).preserves, "T preserves parallelism");
        const auto rep = preserves_tea(T);
        expect(!rep.preserves, "T does not preserve triangle equality");
        expect(rep.counterexample.has_value(), "counterexample reported");
        if (rep.counterexample) {
            const auto& ce = *rep.counterexample;
            expect(is_tea_direct(l13, ce.x, ce.y), "reported pair attains equality before");
            expect(!is_tea_direct(l13, Vec(apply(T, ce.x)), Vec(apply(T, ce.y))),
                   "reported image pair fails equality");
        }
        const Vec a = parse_vec("2,1,1"), b = parse_vec("1,1,2");
        expect(is_tea_direct(l13, a, b), "(2,1,1),(1,1,2) attains equality");
        expect(!is_tea_direct(l13, Vec(apply(T, a)), Vec(apply(T, b))),
               "images of (2,1,1),(1,1,2) do not attain equality");
        const Vec w = parse_vec("1/3,1/3,1/3");
        expect(is_zero_vec(Vec(apply(T, w))), "T(1/3,1/3,1/3) = 0");
        const Face F = minimal_face(l13, w);
        expect(F.dim == 2, "(1/3,1/3,1/3) lies in a facet");
        expect(in_relative_interior(l13, F, w),
               "(1/3,1/3,1/3) in the relative interior of its facet");
        std::vector<Vec> fverts;
        for (int id : F.vertex_set) fverts.push_back(l13.vertex(id));
        expect(fverts.size() == 3, "facet has three vertices");
        for (int i = 0; i < 3; ++i) {
            Vec e = Vec::Zero(3);
            e(i) = 1;
            bool found = false;
            for (const auto& v : fverts) found = found || v == e;
            expect(found, "facet vertex e" + std::to_string(i + 1));
        }
    }

    // c. T(x,y,z) = (x, 0, z) on l1:3 and smoothness orders
    {
        const auto T = endo(l13, {"1,0,0", "0,0,0", "0,0,1"});
        expect(preserves_parallel(T).preserves, "projection preserves parallelism");
        expect(smoothness_order(l13, parse_vec("1,1,1")) == 1, "order(1,1,1) == 1");
        expect(smoothness_order(l13, parse_vec("1,0,1")) == 2, "order(1,0,1) == 2");
    }

    // d. smoothness orders along T(x,y,z) = (x, 2x, z)
    expect(smoothness_order(l13, parse_vec("1,0,0")) == 3, "order(1,0,0) == 3");
    expect(smoothness_order(l13, parse_vec("1,2,0")) == 2, "order(1,2,0) == 2");

    // e. l1-sum of two copies of l1:2, an equality pair that is not parallel
    {
        const auto Z = sum_l1(l12, l12);
        const Vec z1 = concat(parse_vec("1,0"), parse_vec("0,1"));
        const Vec z2 = concat(parse_vec("1/2,1/2"), parse_vec("1/2,-1/2"));
        expect(norm(Z, z1) == 2, "|z1| == 2");
        expect(norm(Z, z2) == 2, "|z2| == 2");
        expect(norm(Z, Vec(z1 + z2)) == 3, "|z1+z2| == 3");
        expect(norm(Z, Vec(z1 - z2)) == 3, "|z1-z2| == 3");
        expect(!is_parallel_direct(Z, z1, z2), "z1, z2 not parallel");
        const SumPoint p1 = split_point(l12, l12, z1), p2 = split_point(l12, l12, z2);
        expect(!l1_sum_pair_rules(l12, l12, p1, p2, PairKind::parallel).holds,
               "sum rules agree: not parallel");
    }

    // f. p-sums: numeric parallel fails while componentwise equality holds exactly
    {
        const SumPoint p1{parse_vec("1,0"), parse_vec("3,0")};
        const SumPoint p2{parse_vec("2,0"), parse_vec("1,0")};
        expect(is_tea_direct(l12, p1.left, p2.left), "left components attain equality");
        expect(is_tea_direct(l12, p1.right, p2.right), "right components attain equality");
        for (double p : {1.5, 2.0, 3.0}) {
            const auto v = p_sum_pair_test(l12, l12, p, p1, p2, PairKind::parallel, 1e-9);
            expect(!v.holds, "p = " + std::to_string(p) + ": parallel fails numerically");
        }
    }

    const double dt = seconds_since(t0);
    expect(dt < 1.0, "regression runs in under 1 s (took " + std::to_string(dt) + " s)");
}

void criterion2() {
    for (const auto& name : catalog::suite_space_names()) {
        const auto X = catalog::make_named(name);
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(0xACCE5500u + std::hash<std::string>{}(name));
        std::size_t disagreements = 0;
        for (int t = 0; t < 10000; ++t) {
            const Vec x = rng.nonzero_vector(X.dim());
            const Vec y = rng.nonzero_vector(X.dim());
            if (is_tea_direct(X, x, y) != is_tea_functional(X, x, y).holds) ++disagreements;
            if (is_parallel_direct(X, x, y) != is_parallel_functional(X, x, y).holds)
                ++disagreements;
        }
        const double dt = seconds_since(t0);
        expect(disagreements == 0, std::string(name) + ": zero disagreements (got " +
                                       std::to_string(disagreements) + ")");
        expect(dt < 10.0, std::string(name) + ": under 10 s (took " + std::to_string(dt) + " s)");
    }
}

} // namespace

int main() {
    criterion(1, "worked-example regression", criterion1);
    criterion(2, "direct vs functional pair oracle, 10^4 pairs per space", criterion2);
    criterion(3, "facet criterion vs brute force, 200 random operators",
              [] { run_suite_criterion("facet-oracle", {"facet-oracle"}); });
    criterion(4, "structure suites: prop210 corchar intn0 distinct cardpreserve pcara", [] {
        run_suite_criterion("structure",
                            {"prop210", "corchar", "intn0", "distinct", "cardpreserve", "pcara"});
    });
    criterion(5, "numerical index one with parallel-pair cross-check",
              [] { run_suite_criterion("index-one", {"index-one"}); });
    criterion(6, "isometry characterization harness",
              [] { run_suite_criterion("isometry", {"isometry"}); });
    criterion(7, "bipolar round-trip on the catalog",
              [] { run_suite_criterion("bipolar", {"bipolar"}); });

    std::cout << (g_failures == 0 ? "acceptance: all criteria passed"
                                  : "acceptance: " + std::to_string(g_failures) +
                                        " criterion(s) failed")
              << '\n';
    return g_failures == 0 ? 0 : 1;
}
