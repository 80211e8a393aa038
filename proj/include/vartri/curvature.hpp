/*
Copyright 2026 The vartri Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "vartri/errors.hpp"
#include "vartri/kernel.hpp"
#include "vartri/mesh.hpp"
#include "vartri/quadrature.hpp"

namespace vartri
{

/** @brief Edge lengths indexed like TriangulatedSurface::edges() */
struct PolyhedralMetric {
    Geometry geometry = Geometry::Euclidean;
    std::vector<double> lengths;

    /** @brief Validates every triangle against the geometry's conditions */
    static PolyhedralMetric make(const TriangulatedSurface& s, Geometry g, std::vector<double> lengths)
    {
        if (static_cast<int>(lengths.size()) != s.edge_count()) {
            throw MeshError("expected " + std::to_string(s.edge_count()) + " edge lengths, got " +
                            std::to_string(lengths.size()));
        }
        PolyhedralMetric m{g, std::move(lengths)};
        for (int t = 0; t < s.triangle_count(); ++t) {
            try {
                angles_from_lengths(g, m.triangle_lengths(s, t));
            } catch (const DomainError& e) {
                throw DomainError("triangle " + std::to_string(t) + ": " + e.what());
            }
        }
        return m;
    }

    /** @brief l_i is the length of side i, opposite corner i */
    Triple triangle_lengths(const TriangulatedSurface& s, int t) const
    {
        const auto e = s.triangle_edges(t);
        return {lengths[e[0]], lengths[e[1]], lengths[e[2]]};
    }
};

/** @brief One radius per vertex; edge lengths are sums of endpoint radii */
struct CirclePacking {
    std::vector<double> radii;

    PolyhedralMetric to_metric(const TriangulatedSurface& s, Geometry g) const
    {
        if (static_cast<int>(radii.size()) != s.vertex_count()) {
            throw MeshError("expected " + std::to_string(s.vertex_count()) + " radii, got " +
                            std::to_string(radii.size()));
        }
        for (double r : radii) {
            if (!(r > 0.0) || !std::isfinite(r)) {
                throw DomainError("radii must be positive and finite");
            }
        }
        std::vector<double> l(s.edge_count());
        for (int e = 0; e < s.edge_count(); ++e) {
            l[e] = radii[s.edge(e).v0] + radii[s.edge(e).v1];
        }
        return PolyhedralMetric::make(s, g, std::move(l));
    }
};

enum class CurvatureKind { K, Phi, Psi };

inline std::string to_string(CurvatureKind k)
{
    switch (k) {
        case CurvatureKind::K: return "k";
        case CurvatureKind::Phi: return "phi";
        case CurvatureKind::Psi: return "psi";
    }
    return "";
}

/** @brief Per-vertex (k) or per-edge (phi, psi) values */
struct CurvatureVector {
    CurvatureKind kind = CurvatureKind::K;
    double h = 0.0;
    std::vector<double> values;

    bool per_edge() const { return kind != CurvatureKind::K; }
};

/** @brief Inner angles of every triangle, corner i opposite side i */
inline std::vector<Triple> corner_angles(const TriangulatedSurface& s, const PolyhedralMetric& m)
{
    std::vector<Triple> out(s.triangle_count());
    for (int t = 0; t < s.triangle_count(); ++t) {
        out[t] = angles_from_lengths(m.geometry, m.triangle_lengths(s, t));
    }
    return out;
}

/** @brief 2 pi minus the angle sum at each vertex */
inline CurvatureVector k0_curvature(const TriangulatedSurface& s, const PolyhedralMetric& m)
{
    const auto angles = corner_angles(s, m);
    CurvatureVector k{CurvatureKind::K, 0.0, std::vector<double>(s.vertex_count(), 2 * kPi)};
    for (int t = 0; t < s.triangle_count(); ++t) {
        for (int c = 0; c < 3; ++c) {
            k.values[s.triangle(t)[c]] -= angles[t][c];
        }
    }
    return k;
}

/** @brief int_{pi/2}^{theta} tan^h(t/2) dt */
inline double tan_half_power_integral(double h, double theta)
{
    if (h == 0.0) {
        return theta - kPi / 2;
    }
    return quad::integrate([h](double t) { return std::pow(std::tan(0.5 * t), h); }, kPi / 2, theta);
}

/** @brief int_{a}^{pi/2} sin^h(t) dt */
inline double sin_power_integral(double h, double a)
{
    if (h == 0.0) {
        return kPi / 2 - a;
    }
    return quad::integrate([h](double t) { return std::pow(std::sin(t), h); }, a, kPi / 2);
}

/** @brief int_0^x cos^h (trig) or cosh^h (hyperbolic) */
inline double cos_power_integral(double h, double x, bool hyperbolic = false)
{
    if (h == 0.0) {
        return x;
    }
    if (hyperbolic) {
        return quad::integrate([h](double t) { return std::pow(std::cosh(t), h); }, 0.0, x);
    }
    return quad::integrate([h](double t) { return std::pow(std::cos(t), h); }, 0.0, x);
}

/** @brief k_h(v) = (4 - deg v) pi/2 - sum over corners of int_{pi/2}^{theta} tan^h(t/2) */
inline CurvatureVector kh_curvature(const TriangulatedSurface& s, const PolyhedralMetric& m, double h)
{
    const auto angles = corner_angles(s, m);
    CurvatureVector k{CurvatureKind::K, h, std::vector<double>(s.vertex_count(), 0.0)};
    for (int v = 0; v < s.vertex_count(); ++v) {
        k.values[v] = (4 - s.degree(v)) * kPi / 2;
    }
    for (int t = 0; t < s.triangle_count(); ++t) {
        for (int c = 0; c < 3; ++c) {
            k.values[s.triangle(t)[c]] -= tan_half_power_integral(h, angles[t][c]);
        }
    }
    return k;
}

namespace detail
{

inline void require_interior_edges(const TriangulatedSurface& s, const char* what)
{
    for (int e = 0; e < s.edge_count(); ++e) {
        if (s.edge(e).is_boundary()) {
            throw MeshError(std::string(what) + " needs two faces at every edge; " + s.edge_label(e) +
                            " is a boundary edge");
        }
    }
}

}  // namespace detail

enum class PhiNormalization {
    Integral,    ///< sum of int_a^{pi/2} sin^h, so pi - a - a' at h = 0
    Dihedral,    ///< adds pi per edge, so 2 pi - a - a' at h = 0
};

/** @brief phi_h(e) from the two angles facing e */
inline CurvatureVector phi_curvature(const TriangulatedSurface& s,
                                     const PolyhedralMetric& m,
                                     double h,
                                     PhiNormalization norm = PhiNormalization::Integral)
{
    detail::require_interior_edges(s, "phi curvature");
    const auto angles = corner_angles(s, m);
    CurvatureVector out{CurvatureKind::Phi, h, std::vector<double>(s.edge_count(), 0.0)};
    for (int e = 0; e < s.edge_count(); ++e) {
        double v = norm == PhiNormalization::Dihedral ? kPi : 0.0;
        for (const EdgeSide& es : s.edge_sides(e)) {
            v += sin_power_integral(h, angles[es.triangle][es.facing_corner()]);
        }
        out.values[e] = v;
    }
    return out;
}

/** @brief psi_h(e) from (b + c - a)/2 on both sides of e */
inline CurvatureVector psi_curvature(const TriangulatedSurface& s, const PolyhedralMetric& m, double h)
{
    detail::require_interior_edges(s, "psi curvature");
    const auto angles = corner_angles(s, m);
    CurvatureVector out{CurvatureKind::Psi, h, std::vector<double>(s.edge_count(), 0.0)};
    for (int e = 0; e < s.edge_count(); ++e) {
        double v = 0.0;
        for (const EdgeSide& es : s.edge_sides(e)) {
            v += cos_power_integral(h, detail::half_sums(angles[es.triangle])[es.side]);
        }
        out.values[e] = v;
    }
    return out;
}

/** @brief psi_0(e) >= 0 per edge */
inline std::vector<bool> is_delaunay(const TriangulatedSurface& s, const PolyhedralMetric& m)
{
    const auto psi = psi_curvature(s, m, 0.0);
    std::vector<bool> out(psi.values.size());
    for (std::size_t e = 0; e < out.size(); ++e) {
        out[e] = psi.values[e] >= 0.0;
    }
    return out;
}

/** @brief Area of one triangle from its side lengths (Heron / L'Huilier) */
inline double triangle_area(Geometry g, const Triple& l)
{
    const double s = 0.5 * (l[0] + l[1] + l[2]);
    if (g == Geometry::Euclidean) {
        return std::sqrt(std::max(0.0, s * (s - l[0]) * (s - l[1]) * (s - l[2])));
    }
    auto t = [g](double x) { return g == Geometry::Spherical ? std::tan(0.5 * x) : std::tanh(0.5 * x); };
    const double q = t(s) * t(s - l[0]) * t(s - l[1]) * t(s - l[2]);
    return 4.0 * std::atan(std::sqrt(std::max(0.0, q)));
}

inline double total_area(const TriangulatedSurface& s, const PolyhedralMetric& m)
{
    double a = 0.0;
    for (int t = 0; t < s.triangle_count(); ++t) {
        a += triangle_area(m.geometry, m.triangle_lengths(s, t));
    }
    return a;
}

// ---------------------------------------------------------------------------
// Hexagon decompositions of bordered surfaces.

/**
 * @brief One length per ideal edge. Each hexagon's boundary arcs follow
 * from its three edge lengths by the right-angled hexagon law.
 */
struct HexagonMetric {
    std::vector<double> lengths;

    static HexagonMetric make(const IdealSurface& is, std::vector<double> lengths)
    {
        if (static_cast<int>(lengths.size()) != is.edge_count()) {
            throw MeshError("expected " + std::to_string(is.edge_count()) + " edge lengths, got " +
                            std::to_string(lengths.size()));
        }
        for (double l : lengths) {
            if (!(l > 0.0) || !std::isfinite(l)) {
                throw DomainError("hexagon edge lengths must be positive and finite");
            }
        }
        return HexagonMetric{std::move(lengths)};
    }

    /**
     * @brief Assemble from per-hexagon side lengths; the two copies of a
     * shared edge must agree to 1e-9 relative.
     */
    static HexagonMetric from_hexagons(const IdealSurface& is, const std::vector<Triple>& sides)
    {
        const auto& s = is.surface();
        if (static_cast<int>(sides.size()) != s.triangle_count()) {
            throw MeshError("expected one triple per hexagon");
        }
        std::vector<double> l(s.edge_count(), 0.0);
        std::vector<bool> seen(s.edge_count(), false);
        for (int t = 0; t < s.triangle_count(); ++t) {
            for (int c = 0; c < 3; ++c) {
                const int e = s.triangle_edge(t, c);
                const double x = sides[t][c];
                if (!seen[e]) {
                    l[e] = x;
                    seen[e] = true;
                } else if (std::abs(l[e] - x) > 1e-9 * std::max(std::abs(l[e]), std::abs(x))) {
                    throw DomainError("hexagons disagree on the length of edge " + s.edge_label(e));
                }
            }
        }
        return make(is, std::move(l));
    }

    Triple hexagon_lengths_of(const IdealSurface& is, int t) const
    {
        const auto e = is.surface().triangle_edges(t);
        return {lengths[e[0]], lengths[e[1]], lengths[e[2]]};
    }

    /** @brief Boundary arcs of hexagon @p t; arc c faces side c */
    Triple arcs(const IdealSurface& is, int t) const { return hexagon_lengths(hexagon_lengths_of(is, t)); }
};

/** @brief psi_h(e) = sum over both hexagons of int_0^{(b+c-a)/2} cosh^h */
inline CurvatureVector hexagon_psi_curvature(const IdealSurface& is, const HexagonMetric& hm, double h)
{
    const auto& s = is.surface();
    CurvatureVector out{CurvatureKind::Psi, h, std::vector<double>(s.edge_count(), 0.0)};
    for (int t = 0; t < s.triangle_count(); ++t) {
        const Triple r = detail::half_sums(hm.arcs(is, t));
        for (int c = 0; c < 3; ++c) {
            out.values[s.triangle_edge(t, c)] += cos_power_integral(h, r[c], true);
        }
    }
    return out;
}

/** @brief Length of each boundary component: the sum of its arcs */
inline std::vector<double> boundary_lengths(const IdealSurface& is, const HexagonMetric& hm)
{
    std::vector<double> out(is.boundary_component_count(), 0.0);
    for (int t = 0; t < is.hexagon_count(); ++t) {
        const Triple a = hm.arcs(is, t);
        for (int c = 0; c < 3; ++c) {
            out[is.arc_component(t, c)] += a[c];
        }
    }
    return out;
}

}  // namespace vartri
