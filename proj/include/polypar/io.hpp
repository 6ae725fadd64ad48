#pragma once

#include "catalog.hpp"
#include "preserve.hpp"
#include "sums.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace polypar {

namespace detail {

inline Vec vec_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw IoError(what + " must be a non-empty array");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw IoError(what + " entries must be rational strings");
        v(static_cast<Eigen::Index>(i)) = parse_rational(j[i].get<std::string>());
    }
    return v;
}

inline nlohmann::json vec_to_json(const Vec& v) {
    nlohmann::json j = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(format_rational(v(i)));
    return j;
}

inline bool same_signed_vertex_sets(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.size() != b.size()) return false;
    for (const Vec& v : a) {
        bool found = false;
        for (const Vec& w : b)
            if (exact_eq(v, w) || exact_eq(v, Vec(-w))) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

} // namespace detail

inline PolyhedralSpace space_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw IoError("space file must hold an object");
    for (const char* field : {"name", "dim", "dual_vertices"})
        if (!j.contains(field)) throw IoError(std::string("space file lacks \"") + field + "\"");
    if (!j["name"].is_string()) throw IoError("\"name\" must be a string");
    if (!j["dim"].is_number_integer()) throw IoError("\"dim\" must be an integer");
    if (!j["dual_vertices"].is_array()) throw IoError("\"dual_vertices\" must be an array");

    const int dim = j["dim"].get<int>();
    std::vector<Vec> duals;
    for (const auto& row : j["dual_vertices"])
        duals.push_back(detail::vec_from_json(row, "dual vertex"));
    auto X = PolyhedralSpace::build(dim, duals, j["name"].get<std::string>());

    if (j.contains("primal_vertices")) {
        if (!j["primal_vertices"].is_array())
            throw IoError("\"primal_vertices\" must be an array");
        std::vector<Vec> primal;
        for (const auto& row : j["primal_vertices"])
            primal.push_back(detail::vec_from_json(row, "primal vertex"));
        for (const Vec& v : primal)
            if (v.size() != X.dim()) throw IoError("primal vertex has the wrong length");
        if (!detail::same_signed_vertex_sets(primal, X.vertices()))
            throw IoError("primal vertex cross-validation failed for \"" + X.name() + "\"");
    }
    return X;
}

inline nlohmann::json space_to_json(const PolyhedralSpace& X) {
    nlohmann::json j;
    j["name"] = X.name();
    j["dim"] = static_cast<int>(X.dim());
    j["dual_vertices"] = nlohmann::json::array();
    for (const Vec& g : X.dual_vertices()) j["dual_vertices"].push_back(detail::vec_to_json(g));
    j["primal_vertices"] = nlohmann::json::array();
    for (const Vec& v : X.vertices()) j["primal_vertices"].push_back(detail::vec_to_json(v));
    return j;
}

namespace detail {

inline nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed file " + path + ": " + e.what());
    }
}

/* "l1(A,B)" / "linf(A,B)" with a top-level comma; A and B recurse. */
inline std::optional<std::array<std::string, 3>> split_composite(const std::string& ref) {
    std::string head;
    if (ref.rfind("l1(", 0) == 0) head = "l1";
    else if (ref.rfind("linf(", 0) == 0) head = "linf";
    else return std::nullopt;
    if (ref.back() != ')') return std::nullopt;
    const std::string inner = ref.substr(head.size() + 1, ref.size() - head.size() - 2);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        if (inner[i] == '(') ++depth;
        else if (inner[i] == ')') --depth;
        else if (inner[i] == ',' && depth == 0)
            return std::array<std::string, 3>{head, inner.substr(0, i), inner.substr(i + 1)};
    }
    return std::nullopt;
}

} // namespace detail

inline PolyhedralSpace load_space(const std::string& path) {
    return space_from_json(detail::parse_json_file(path));
}

inline void save_space(const PolyhedralSpace& X, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out << space_to_json(X).dump(2) << '\n';
}

/* A space reference is a catalog name, a composite sum expression over
 * references, or a path to a space file. */
inline PolyhedralSpace resolve_space(const std::string& ref) {
    if (auto named = catalog::try_named(ref)) return *std::move(named);
    if (const auto parts = detail::split_composite(ref)) {
        const auto& [head, left, right] = *parts;
        const auto A = resolve_space(left);
        const auto B = resolve_space(right);
        return head == "l1" ? sum_l1(A, B) : sum_linf(A, B);
    }
    return load_space(ref);
}

inline Operator operator_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw IoError("operator file must hold an object");
    for (const char* field : {"domain", "codomain", "matrix"})
        if (!j.contains(field))
            throw IoError(std::string("operator file lacks \"") + field + "\"");
    if (!j["domain"].is_string() || !j["codomain"].is_string())
        throw IoError("\"domain\" and \"codomain\" must be space references");
    if (!j["matrix"].is_array()) throw IoError("\"matrix\" must be an array of rows");
    auto domain = resolve_space(j["domain"].get<std::string>());
    auto codomain = resolve_space(j["codomain"].get<std::string>());
    std::vector<Vec> rows;
    for (const auto& row : j["matrix"]) rows.push_back(detail::vec_from_json(row, "matrix row"));
    if (rows.empty()) throw IoError("\"matrix\" must be non-empty");
    return make_operator(std::move(domain), std::move(codomain), mat_from_rows(rows));
}

inline nlohmann::json operator_to_json(const std::string& domain_ref,
                                       const std::string& codomain_ref, const Mat& m) {
    nlohmann::json j;
    j["domain"] = domain_ref;
    j["codomain"] = codomain_ref;
    j["matrix"] = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) j["matrix"].push_back(detail::vec_to_json(m.row(r)));
    return j;
}

inline Operator load_operator(const std::string& path) {
    return operator_from_json(detail::parse_json_file(path));
}

inline std::string report_to_text(const Operator& T, const PreservationReport& rep) {
    std::ostringstream out;
    out << "pair kind: "
        << (rep.kind == PairKind::tea ? "triangle equality" : "parallelism") << '\n';
    out << "preserves: " << (rep.preserves ? "yes" : "no") << '\n';
    out << "branch: " << rep.branch << '\n';
    for (const auto& cert : rep.certificates) {
        out << "facet (" << format_vec(T.domain.functional(cert.facet.active_functionals.front()))
            << "): ";
        switch (cert.kind) {
            case CertificateKind::common_functional:
                out << "common functional (" << format_vec(T.codomain.functional(*cert.functional))
                    << ")";
                break;
            case CertificateKind::image_zero: out << "image zero"; break;
            case CertificateKind::rank_le_one: out << "rank <= 1"; break;
        }
        out << '\n';
    }
    if (rep.failing_facet)
        out << "failing facet: ("
            << format_vec(T.domain.functional(rep.failing_facet->active_functionals.front()))
            << ")\n";
    if (rep.counterexample) {
        const auto& ce = *rep.counterexample;
        out << "counterexample:\n";
        out << "  x = (" << format_vec(ce.x) << ")\n";
        out << "  y = (" << format_vec(ce.y) << ")\n";
        out << "  pair before: " << (ce.holds_before ? "holds" : "fails") << '\n';
        out << "  image pair after: " << (ce.holds_after ? "holds" : "fails") << '\n';
    }
    return out.str();
}

} // namespace polypar
