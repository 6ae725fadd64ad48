#pragma once

#include "space.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace polypar {

namespace detail {

/* Exact counterclockwise order around the origin, starting on the positive
 * x-axis: split into half-planes, then compare by cross product. */
inline bool angular_less(const Vec& a, const Vec& b) {
    const auto half = [](const Vec& p) { return (p(1) > 0 || (p(1) == 0 && p(0) > 0)) ? 0 : 1; };
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    const Rational cross = a(0) * b(1) - a(1) * b(0);
    return cross > 0;
}

inline std::vector<Vec> angular_order(std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end(), angular_less);
    return pts;
}

} // namespace detail

/* Static SVG drawing of a 2-dimensional unit ball: the primal polygon with
 * labeled vertices and facet functionals, and the dual polygon as a scaled
 * dashed inset. */
inline std::string render_ball_svg(const PolyhedralSpace& X) {
    if (X.dim() != 2) throw UnsupportedDimension("SVG rendering needs a 2-dimensional space");

    std::vector<Vec> primal;
    for (const Vec& v : X.vertices()) primal.push_back(v);
    primal = detail::angular_order(std::move(primal));

    std::vector<Vec> dual;
    for (const Vec& g : X.dual_vertices()) {
        dual.push_back(g);
        dual.push_back(-g);
    }
    dual = detail::angular_order(std::move(dual));

    double extent = 1.0;
    for (const Vec& v : primal)
        extent = std::max({extent, std::abs(to_double(v(0))), std::abs(to_double(v(1)))});
    const double dual_scale = 0.4;
    const double unit = 170.0 / extent; // world unit -> pixels
    const double size = 2.0 * extent * unit + 110.0;
    const double cx = size / 2.0, cy = size / 2.0;
    const auto px = [&](double wx) { return cx + unit * wx; };
    const auto py = [&](double wy) { return cy - unit * wy; };

    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    out << "  <title>" << X.name() << "</title>\n";
    out << "  <line x1=\"0\" y1=\"" << cy << "\" x2=\"" << size << "\" y2=\"" << cy
        << "\" stroke=\"#ccc\"/>\n";
    out << "  <line x1=\"" << cx << "\" y1=\"0\" x2=\"" << cx << "\" y2=\"" << size
        << "\" stroke=\"#ccc\"/>\n";

    const auto polygon = [&](const std::vector<Vec>& pts, double scale, const char* style) {
        out << "  <polygon points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) out << ' ';
            out << px(scale * to_double(pts[i](0))) << ',' << py(scale * to_double(pts[i](1)));
        }
        out << "\" " << style << "/>\n";
    };
    polygon(primal, 1.0, "fill=\"#9ecae1\" fill-opacity=\"0.35\" stroke=\"#2171b5\" "
                         "stroke-width=\"2\"");
    polygon(dual, dual_scale, "fill=\"none\" stroke=\"#cb181d\" stroke-width=\"1.5\" "
                              "stroke-dasharray=\"6,4\"");

    for (const Vec& v : primal) {
        const double x = px(to_double(v(0))), y = py(to_double(v(1)));
        out << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3.5\" fill=\"#2171b5\"/>\n";
        out << "  <text x=\"" << x + 6 << "\" y=\"" << y - 6
            << "\" font-size=\"11\" font-family=\"monospace\">(" << format_vec(v)
            << ")</text>\n";
    }
    // facet labels at the midpoints of the primal edges
    for (const Face& F : facets(X)) {
        const Vec a = X.vertex(F.vertex_set[0]);
        const Vec b = X.vertex(F.vertex_set[1]);
        const Vec g = X.functional(F.active_functionals.front());
        const double mx = px(to_double((a(0) + b(0)) / 2));
        const double my = py(to_double((a(1) + b(1)) / 2));
        out << "  <text x=\"" << mx + 4 << "\" y=\"" << my + 4
            << "\" font-size=\"10\" font-family=\"monospace\" fill=\"#555\">[" << format_vec(g)
            << "]</text>\n";
    }
    for (const Vec& g : dual) {
        out << "  <circle cx=\"" << px(dual_scale * to_double(g(0))) << "\" cy=\""
            << py(dual_scale * to_double(g(1))) << "\" r=\"2.5\" fill=\"#cb181d\"/>\n";
    }
    out << "  <text x=\"8\" y=\"16\" font-size=\"12\" font-family=\"monospace\">" << X.name()
        << ": unit ball (blue), dual ball at " << dual_scale << " scale (red)</text>\n";
    out << "</svg>\n";
    return out.str();
}

inline void write_ball_svg(const PolyhedralSpace& X, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out << render_ball_svg(X);
}

} // namespace polypar
