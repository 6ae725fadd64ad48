#include <polypar/io.hpp>
#include <polypar/suites.hpp>
#include <polypar/svg.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace polypar;

namespace {

constexpr const char* kDescription =
    "Exact queries on finite-dimensional polyhedral normed spaces: parallel and\n"
    "triangle-equality pairs, operator preservation checks, randomized preserver\n"
    "search, validation suites, and SVG ball drawings.\n"
    "\n"
    "Space references: catalog names (l1:n, linf:n for n = 2..6; hexagon),\n"
    "composite sums l1(A,B) / linf(A,B) over references, or paths to space files\n"
    "{\"name\", \"dim\", \"dual_vertices\", optional \"primal_vertices\"}.\n"
    "The hexagon space uses the exact rational dual vertices (1,0), (1/2,1),\n"
    "(-1/2,1); it is centrally symmetric but deliberately not the regular\n"
    "hexagon, whose vertices are irrational.\n"
    "\n"
    "Exit codes: 0 holds/success, 1 definite negative with witness, 2 internal\n"
    "inconsistency (oracle disagreement), 3 input error.";

PairKind parse_kind(const std::string& kind) {
    return kind == "tea" ? PairKind::tea : PairKind::parallel;
}

int run_pair(const std::string& ref, const std::string& xs, const std::string& ys,
             const std::string& kind_name) {
    const auto X = resolve_space(ref);
    const Vec x = parse_vec(xs);
    const Vec y = parse_vec(ys);
    const PairKind kind = parse_kind(kind_name);

    const bool direct = kind == PairKind::tea ? is_tea_direct(X, x, y)
                                              : is_parallel_direct(X, x, y);
    const PairVerdict fn = kind == PairKind::tea ? is_tea_functional(X, x, y)
                                                 : is_parallel_functional(X, x, y);

    std::cout << "space: " << X.name() << '\n';
    std::cout << "x = (" << format_vec(x) << "), norm " << format_rational(norm(X, x)) << '\n';
    std::cout << "y = (" << format_vec(y) << "), norm " << format_rational(norm(X, y)) << '\n';
    std::cout << "kind: " << (kind == PairKind::tea ? "triangle equality" : "parallelism")
              << '\n';
    std::cout << "direct test: " << (direct ? "holds" : "fails") << '\n';
    std::cout << "functional test: " << (fn.holds ? "holds" : "fails") << '\n';
    if (fn.witness_functional)
        std::cout << "witness functional: (" << format_vec(X.functional(*fn.witness_functional))
                  << ")\n";
    if (fn.witness_sign) std::cout << "witness sign: " << (*fn.witness_sign > 0 ? "+1" : "-1")
                                   << '\n';

    if (direct != fn.holds) {
        std::cout << "internal disagreement between direct and functional tests\n";
        return 2;
    }
    return direct ? 0 : 1;
}

int run_check_preserver(const std::string& operator_path, const std::string& kind_name) {
    const auto T = load_operator(operator_path);
    const PairKind kind = parse_kind(kind_name);
    const auto rep = kind == PairKind::tea ? preserves_tea(T) : preserves_parallel(T);
    std::cout << "operator: " << operator_path << " (" << T.domain.name() << " -> "
              << T.codomain.name() << ", rank " << T.rank << ")\n";
    std::cout << report_to_text(T, rep);
    return rep.preserves ? 0 : 1;
}

int run_search(const std::string& domain_ref, const std::string& codomain_ref, int trials,
               std::uint64_t seed, const std::string& echo) {
    if (trials < 1) throw ParseError("--trials must be at least 1");
    const auto X = resolve_space(domain_ref);
    const auto Y = resolve_space(codomain_ref.empty() ? domain_ref : codomain_ref);

    const auto start = std::chrono::steady_clock::now();
    Rng rng(seed);
    std::map<int, int> parallel_by_rank, tea_by_rank;
    int bijective_parallel = 0;
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        const auto T = detail::random_operator(X, Y, rng);
        const bool par = preserves_parallel(T).preserves;
        const bool tea = preserves_tea(T).preserves;
        if (par) ++parallel_by_rank[T.rank];
        if (tea) ++tea_by_rank[T.rank];
        if (is_bijective(T) && par) ++bijective_parallel;

        if (T.rank <= 1 && !par) ++violations;          // dependent images are parallel
        if (tea && !par) ++violations;                  // tea preservation implies parallel
        if (is_bijective(T) && tea != par) ++violations;
        if (is_bijective(T) && par && !count_law_check(T)) ++violations;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();

    std::cout << "command: " << echo << '\n';
    std::cout << "arithmetic: exact rationals\n";
    std::cout << "domain: " << X.name() << ", codomain: " << Y.name() << '\n';
    std::cout << "seed: " << seed << ", trials: " << trials << '\n';
    const auto tally = [](const std::map<int, int>& by_rank) {
        std::ostringstream os;
        int total = 0;
        for (const auto& [r, c] : by_rank) {
            os << " rank " << r << ": " << c << ";";
            total += c;
        }
        return std::to_string(total) + " total;" + os.str();
    };
    std::cout << "parallel preservers: " << tally(parallel_by_rank) << '\n';
    std::cout << "tea preservers: " << tally(tea_by_rank) << '\n';
    std::cout << "bijective parallel preservers: " << bijective_parallel << '\n';
    std::cout << "invariant violations: " << violations << '\n';
    std::cout << "wall time: " << ms << " ms\n";
    return violations == 0 ? 0 : 2;
}

int run_plot(const std::string& ref, const std::string& out_path) {
    const auto X = resolve_space(ref);
    write_ball_svg(X, out_path);
    std::cout << "wrote " << out_path << " (" << X.name() << ", " << X.vertices().size()
              << " vertices)\n";
    return 0;
}

int run_suite_cmd(const std::string& name, const SuiteConfig& cfg) {
    const auto res = run_suite(name, cfg);
    for (const auto& line : res.lines) std::cout << "  " << line << '\n';
    std::cout << "suite " << name << ": " << (res.passed ? "PASS" : "FAIL") << '\n';
    return res.passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{kDescription, "polypar"};
    app.require_subcommand(1);

    std::string space_ref, codomain_ref, x_str, y_str, operator_path, out_path, suite_name;
    std::string kind = "tea", eps_str = "1/100";
    std::uint64_t seed = 20260814;
    int trials = 1000;
    double tol = 1e-9;

    auto* pair = app.add_subcommand("pair", "Decide a pair relation in a space");
    pair->add_option("space", space_ref, "space reference")->required();
    pair->add_option("x", x_str, "first vector, comma-separated rationals")->required();
    pair->add_option("y", y_str, "second vector")->required();
    pair->add_option("kind", kind, "tea | parallel")
        ->required()
        ->check(CLI::IsMember({"tea", "parallel"}));

    auto* chk = app.add_subcommand("check-preserver",
                                   "Decide whether an operator preserves a pair relation");
    chk->add_option("--operator", operator_path, "operator file")->required();
    chk->add_option("--kind", kind, "tea | parallel")
        ->check(CLI::IsMember({"tea", "parallel"}));

    auto* search = app.add_subcommand("search", "Randomized preserver search and tally");
    search->add_option("--space", space_ref, "domain space reference")->required();
    search->add_option("--codomain", codomain_ref, "codomain reference (default: domain)");
    search->add_option("--trials", trials, "number of sampled operators");
    search->add_option("--seed", seed, "random seed");

    auto* plot = app.add_subcommand("plot", "Render a 2-dimensional unit ball as SVG");
    plot->add_option("--space", space_ref, "space reference")->required();
    plot->add_option("--out", out_path, "output SVG path")->required();

    auto* suite = app.add_subcommand("suite", "Run a validation suite");
    suite->add_option("name", suite_name, "suite name or \"all\"")->required();
    suite->add_option("--seed", seed, "random seed");
    suite->add_option("--trials", trials, "workload override (0 = suite defaults)");
    suite->add_option("--eps", eps_str, "approximate-orthogonality parameter, rational P/Q");
    suite->add_option("--tol", tol, "numeric tolerance for p-sum comparisons");

    std::ostringstream echo;
    for (int i = 0; i < argc; ++i) echo << (i ? " " : "") << argv[i];

    CLI11_PARSE(app, argc, argv);

    try {
        if (pair->parsed()) return run_pair(space_ref, x_str, y_str, kind);
        if (chk->parsed()) return run_check_preserver(operator_path, kind);
        if (search->parsed())
            return run_search(space_ref, codomain_ref, trials, seed, echo.str());
        if (plot->parsed()) return run_plot(space_ref, out_path);
        if (suite->parsed()) {
            SuiteConfig cfg;
            cfg.seed = seed;
            cfg.trials = suite->count("--trials") ? trials : 0;
            cfg.eps = parse_rational(eps_str);
            cfg.tol = tol;
            return run_suite_cmd(suite_name, cfg);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 3;
}
