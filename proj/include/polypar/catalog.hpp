#pragma once

#include "space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polypar::catalog {

/* l1:n — ball vertices ±e_i, dual vertices all sign patterns (reps with
 * leading +1). */
inline PolyhedralSpace make_l1(int n) {
    if (n < 2 || n > PolyhedralSpace::kMaxDim)
        throw UnsupportedDimension("l1 spaces are available for dim 2..6");
    std::vector<Vec> duals;
    for (long long mask = 0; mask < (1LL << (n - 1)); ++mask) {
        Vec g(n);
        g(0) = 1;
        for (int j = 1; j < n; ++j) g(j) = ((mask >> (j - 1)) & 1) ? -1 : 1;
        duals.push_back(std::move(g));
    }
    return PolyhedralSpace::build(n, duals, "l1:" + std::to_string(n));
}

/* linf:n — ball vertices the sign patterns, dual vertices ±e_i. */
inline PolyhedralSpace make_linf(int n) {
    if (n < 2 || n > PolyhedralSpace::kMaxDim)
        throw UnsupportedDimension("linf spaces are available for dim 2..6");
    std::vector<Vec> duals;
    for (int i = 0; i < n; ++i) {
        Vec g = Vec::Zero(n);
        g(i) = 1;
        duals.push_back(std::move(g));
    }
    return PolyhedralSpace::build(n, duals, "linf:" + std::to_string(n));
}

/* Hexagonal plane: ball vertices ±{(1,1/2),(1,-1/2),(0,1)}. */
inline PolyhedralSpace make_hexagon() {
    std::vector<Vec> duals = {vec_of({rat(1), rat(0)}), vec_of({rat(1, 2), rat(1)}),
                              vec_of({rat(-1, 2), rat(1)})};
    return PolyhedralSpace::build(2, duals, "hexagon");
}

/* Resolves "l1:n", "linf:n", "hexagon"; nullopt for anything else. */
inline std::optional<PolyhedralSpace> try_named(const std::string& name) {
    if (name == "hexagon") return make_hexagon();
    const auto parse_dim = [](const std::string& s) -> std::optional<int> {
        if (s.empty() || s.size() > 2) return std::nullopt;
        for (char c : s)
            if (c < '0' || c > '9') return std::nullopt;
        return std::stoi(s);
    };
    if (name.rfind("l1:", 0) == 0) {
        if (const auto n = parse_dim(name.substr(3))) return make_l1(*n);
    }
    if (name.rfind("linf:", 0) == 0) {
        if (const auto n = parse_dim(name.substr(5))) return make_linf(*n);
    }
    return std::nullopt;
}

inline PolyhedralSpace make_named(const std::string& name) {
    if (auto X = try_named(name)) return std::move(*X);
    throw ParseError("unknown space name: " + name);
}

/* The spaces exercised by the cross-cutting suites. */
inline std::vector<std::string> suite_space_names() {
    return {"l1:2", "l1:3", "linf:2", "linf:3", "hexagon"};
}

} // namespace polypar::catalog
