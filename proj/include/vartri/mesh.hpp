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

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "vartri/errors.hpp"

namespace vartri
{

using Triangle = std::array<int, 3>;

enum class SurfaceMode { Closed, Bordered };

/** @brief Corner @p corner (0..2) of triangle @p triangle */
struct Corner {
    int triangle;
    int corner;
    bool operator==(const Corner&) const = default;
};

/**
 * @brief One incidence of an edge: side @p side of @p triangle.
 *
 * Side i of a triangle joins corners i+1 and i+2, so it faces corner i.
 * The adjacent corners are the two endpoints of the side.
 */
struct EdgeSide {
    int triangle;
    int side;
    int facing_corner() const { return side; }
    std::array<int, 2> adjacent_corners() const { return {(side + 1) % 3, (side + 2) % 3}; }
    bool operator==(const EdgeSide&) const = default;
};

/** @brief Explicit identification of two triangle sides */
struct SideGluing {
    EdgeSide first;
    EdgeSide second;
};

struct Edge {
    int v0;  ///< smaller endpoint label
    int v1;
    std::vector<EdgeSide> sides;  ///< one (boundary) or two entries
    bool is_boundary() const { return sides.size() == 1; }
};

/**
 * @brief Closed or bordered triangulated surface.
 *
 * Edges are equivalence classes of triangle sides. Without explicit gluings
 * two sides are identified when they join the same vertex pair; with
 * gluings, any pairing is allowed, so several edges may join the same pair
 * of vertices. Immutable after construction.
 */
class TriangulatedSurface
{
public:
    /** @brief Pair sides by their vertex pairs (simplicial input) */
    static TriangulatedSurface build(
        int vertex_count, std::vector<Triangle> triangles, SurfaceMode mode = SurfaceMode::Closed)
    {
        TriangulatedSurface s(vertex_count, std::move(triangles), mode);
        s.check_triangles(false);
        std::map<std::pair<int, int>, std::vector<EdgeSide>> by_pair;
        for (int t = 0; t < s.triangle_count(); ++t) {
            for (int side = 0; side < 3; ++side) {
                auto [a, b] = s.side_vertices({t, side});
                by_pair[{std::min(a, b), std::max(a, b)}].push_back({t, side});
            }
        }
        std::vector<std::vector<EdgeSide>> classes;
        for (auto& [key, sides] : by_pair) {
            if (sides.size() > 2) {
                throw MeshError(
                    "non-manifold edge " + std::to_string(key.first) + "-" +
                    std::to_string(key.second) + " has " + std::to_string(sides.size()) +
                    " incidences");
            }
            classes.push_back(std::move(sides));
        }
        s.finish(std::move(classes), true);
        return s;
    }

    /**
     * @brief Build from an explicit list of side identifications.
     *
     * Sides not named in @p gluings are boundary sides. A triangle may be
     * glued to itself; such self-gluings are accepted without link checks.
     */
    static TriangulatedSurface build_glued(
        int vertex_count,
        std::vector<Triangle> triangles,
        const std::vector<SideGluing>& gluings,
        SurfaceMode mode = SurfaceMode::Closed)
    {
        TriangulatedSurface s(vertex_count, std::move(triangles), mode);
        s.check_triangles(true);
        const int F = s.triangle_count();
        std::vector<int> used(3 * F, 0);
        std::vector<std::vector<EdgeSide>> classes;
        auto check_side = [&](EdgeSide es) {
            if (es.triangle < 0 || es.triangle >= F || es.side < 0 || es.side > 2) {
                throw MeshError("gluing names a side that does not exist");
            }
            if (used[3 * es.triangle + es.side]++ != 0) {
                throw MeshError(
                    "side " + std::to_string(es.side) + " of triangle " +
                    std::to_string(es.triangle) + " is glued more than once");
            }
        };
        for (const auto& g : gluings) {
            check_side(g.first);
            check_side(g.second);
            auto [a0, b0] = s.side_vertices(g.first);
            auto [a1, b1] = s.side_vertices(g.second);
            if (std::minmax(a0, b0) != std::minmax(a1, b1)) {
                throw MeshError("glued sides join different vertex pairs");
            }
            classes.push_back({g.first, g.second});
        }
        for (int t = 0; t < F; ++t) {
            for (int side = 0; side < 3; ++side) {
                if (used[3 * t + side] == 0) {
                    classes.push_back({{t, side}});
                }
            }
        }
        s.finish(std::move(classes), false);
        return s;
    }

    int vertex_count() const { return vertex_count_; }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    SurfaceMode mode() const { return mode_; }
    bool is_closed() const { return boundary_edges_ == 0; }
    bool is_simplicial() const { return simplicial_; }

    const Triangle& triangle(int t) const { return triangles_.at(t); }
    std::span<const Triangle> triangles() const { return triangles_; }
    const Edge& edge(int e) const { return edges_.at(e); }
    std::span<const Edge> edges() const { return edges_; }

    /** @brief Edge index of side @p side of triangle @p t */
    int triangle_edge(int t, int side) const { return side_edge_.at(3 * t + side); }
    std::array<int, 3> triangle_edges(int t) const
    {
        return {triangle_edge(t, 0), triangle_edge(t, 1), triangle_edge(t, 2)};
    }

    int euler_characteristic() const { return vertex_count() - edge_count() + triangle_count(); }

    /** @brief All corners at @p v; in cyclic order around v for closed simplicial surfaces */
    std::span<const Corner> vertex_star(int v) const
    {
        if (v < 0 || v >= vertex_count_) {
            throw MeshError("vertex index " + std::to_string(v) + " out of range");
        }
        return stars_[v];
    }

    int degree(int v) const { return static_cast<int>(vertex_star(v).size()); }

    /** @brief The one or two incidences of edge @p e */
    std::span<const EdgeSide> edge_sides(int e) const
    {
        if (e < 0 || e >= edge_count()) {
            throw MeshError("edge index " + std::to_string(e) + " out of range");
        }
        return edges_[e].sides;
    }

    /** @brief Vertex labels of the endpoints of a triangle side */
    std::pair<int, int> side_vertices(EdgeSide es) const
    {
        const auto& tri = triangles_.at(es.triangle);
        return {tri[(es.side + 1) % 3], tri[(es.side + 2) % 3]};
    }

    /** @brief "i-j" when the vertex pair identifies the edge, "e<k>" otherwise */
    std::string edge_label(int e) const
    {
        const auto& ed = edge(e);
        if (simplicial_) {
            return std::to_string(ed.v0) + "-" + std::to_string(ed.v1);
        }
        return "e" + std::to_string(e);
    }

    /** @brief Inverse of edge_label; also accepts "e<k>" and "j-i" */
    std::optional<int> find_edge(const std::string& label) const
    {
        if (!label.empty() && label[0] == 'e') {
            try {
                std::size_t pos = 0;
                int k = std::stoi(label.substr(1), &pos);
                if (pos + 1 == label.size() && k >= 0 && k < edge_count()) {
                    return k;
                }
            } catch (const std::exception&) {
            }
            return std::nullopt;
        }
        auto dash = label.find('-');
        if (dash == std::string::npos || !simplicial_) {
            return std::nullopt;
        }
        try {
            int a = std::stoi(label.substr(0, dash));
            int b = std::stoi(label.substr(dash + 1));
            auto it = pair_index_.find(std::minmax(a, b));
            if (it != pair_index_.end()) {
                return it->second;
            }
        } catch (const std::exception&) {
        }
        return std::nullopt;
    }

private:
    TriangulatedSurface(int vertex_count, std::vector<Triangle> triangles, SurfaceMode mode)
        : vertex_count_(vertex_count), triangles_(std::move(triangles)), mode_(mode)
    {
    }

    void check_triangles(bool allow_repeats) const
    {
        if (vertex_count_ <= 0) {
            throw MeshError("vertex count must be positive");
        }
        if (triangles_.empty()) {
            throw MeshError("surface has no triangles");
        }
        for (std::size_t t = 0; t < triangles_.size(); ++t) {
            const auto& tri = triangles_[t];
            for (int i = 0; i < 3; ++i) {
                if (tri[i] < 0 || tri[i] >= vertex_count_) {
                    throw MeshError(
                        "triangle " + std::to_string(t) + " has vertex index " +
                        std::to_string(tri[i]) + " out of range");
                }
            }
            if (!allow_repeats && (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])) {
                throw MeshError("triangle " + std::to_string(t) + " repeats a vertex");
            }
        }
    }

    void finish(std::vector<std::vector<EdgeSide>> classes, bool simplicial)
    {
        simplicial_ = simplicial;
        // Sort by (min vertex, max vertex, first incident triangle).
        for (auto& c : classes) {
            std::sort(c.begin(), c.end(), [](EdgeSide a, EdgeSide b) {
                return std::tie(a.triangle, a.side) < std::tie(b.triangle, b.side);
            });
        }
        auto key = [this](const std::vector<EdgeSide>& c) {
            auto [a, b] = side_vertices(c.front());
            return std::make_tuple(std::min(a, b), std::max(a, b), c.front().triangle, c.front().side);
        };
        std::sort(classes.begin(), classes.end(), [&](const auto& x, const auto& y) {
            return key(x) < key(y);
        });

        side_edge_.assign(3 * triangles_.size(), -1);
        edges_.clear();
        boundary_edges_ = 0;
        for (auto& c : classes) {
            auto [a, b] = side_vertices(c.front());
            const int e = static_cast<int>(edges_.size());
            for (auto es : c) {
                side_edge_[3 * es.triangle + es.side] = e;
            }
            if (c.size() == 1) {
                ++boundary_edges_;
            }
            if (simplicial) {
                pair_index_[std::minmax(a, b)] = e;
            }
            edges_.push_back({std::min(a, b), std::max(a, b), std::move(c)});
        }
        if (mode_ == SurfaceMode::Closed && boundary_edges_ > 0) {
            const auto& ed = *std::find_if(edges_.begin(), edges_.end(), [](const Edge& x) {
                return x.is_boundary();
            });
            throw MeshError(
                "edge " + std::to_string(ed.v0) + "-" + std::to_string(ed.v1) +
                " has 1 incidence in closed mode");
        }

        stars_.assign(vertex_count_, {});
        for (int t = 0; t < triangle_count(); ++t) {
            for (int c = 0; c < 3; ++c) {
                stars_[triangles_[t][c]].push_back({t, c});
            }
        }
        for (int v = 0; v < vertex_count_; ++v) {
            if (stars_[v].empty()) {
                throw MeshError("vertex " + std::to_string(v) + " is not used by any triangle");
            }
        }
        if (simplicial && mode_ == SurfaceMode::Closed) {
            for (int v = 0; v < vertex_count_; ++v) {
                order_star(v);
            }
        }
    }

    /** @brief Corner of triangle @p t carrying vertex label @p v (simplicial only) */
    int corner_of(int t, int v) const
    {
        const auto& tri = triangles_[t];
        for (int c = 0; c < 3; ++c) {
            if (tri[c] == v) {
                return c;
            }
        }
        return -1;
    }

    // Walks corners at v across shared edges; the link must be one cycle.
    void order_star(int v)
    {
        auto& star = stars_[v];
        std::vector<Corner> ordered;
        ordered.reserve(star.size());
        Corner cur = star.front();
        int came_from = -1;
        for (std::size_t step = 0; step < star.size(); ++step) {
            ordered.push_back(cur);
            // the two sides of cur's triangle that touch v
            const int s_next = (cur.corner + 1) % 3;
            const int s_prev = (cur.corner + 2) % 3;
            int e = triangle_edge(cur.triangle, s_next);
            if (e == came_from) {
                e = triangle_edge(cur.triangle, s_prev);
            }
            const auto& sides = edges_[e].sides;
            const EdgeSide other = sides[0].triangle == cur.triangle ? sides[1] : sides[0];
            came_from = e;
            cur = {other.triangle, corner_of(other.triangle, v)};
        }
        if (!(cur == ordered.front())) {
            throw MeshError("link of vertex " + std::to_string(v) + " is not a single cycle");
        }
        std::vector<Corner> sorted_a = ordered, sorted_b = star;
        auto lt = [](Corner a, Corner b) { return std::tie(a.triangle, a.corner) < std::tie(b.triangle, b.corner); };
        std::sort(sorted_a.begin(), sorted_a.end(), lt);
        std::sort(sorted_b.begin(), sorted_b.end(), lt);
        if (sorted_a != sorted_b) {
            throw MeshError("link of vertex " + std::to_string(v) + " is not a single cycle");
        }
        star = std::move(ordered);
    }

    int vertex_count_ = 0;
    std::vector<Triangle> triangles_;
    SurfaceMode mode_ = SurfaceMode::Closed;
    bool simplicial_ = true;
    int boundary_edges_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> side_edge_;
    std::vector<std::vector<Corner>> stars_;
    std::map<std::pair<int, int>, int> pair_index_;
};

/**
 * @brief Compact surface with boundary obtained by deleting small open
 * neighborhoods of the vertices of a triangulation.
 *
 * Every edge must carry two sides, since each ideal edge separates two
 * right-angled hexagons. The boundary arc cut from corner c of triangle t
 * lies on the boundary component of vertex triangle(t)[c] and faces side c.
 */
class IdealSurface
{
public:
    explicit IdealSurface(TriangulatedSurface surface) : surface_(std::move(surface))
    {
        for (int e = 0; e < surface_.edge_count(); ++e) {
            if (surface_.edge(e).sides.size() != 2) {
                throw MeshError(
                    "ideal edge " + surface_.edge_label(e) + " must separate two hexagons");
            }
        }
    }

    const TriangulatedSurface& surface() const { return surface_; }
    int edge_count() const { return surface_.edge_count(); }
    int hexagon_count() const { return surface_.triangle_count(); }
    int boundary_component_count() const { return surface_.vertex_count(); }

    /** @brief Boundary component holding the arc at corner @p c of hexagon @p t */
    int arc_component(int t, int c) const { return surface_.triangle(t)[c]; }

    /** @brief Two hexagons glued along three edges */
    static IdealSurface pair_of_pants()
    {
        return IdealSurface(TriangulatedSurface::build(3, {{0, 1, 2}, {0, 2, 1}}, SurfaceMode::Bordered));
    }

private:
    TriangulatedSurface surface_;
};

/** @brief Boundary of the tetrahedron */
inline TriangulatedSurface tetrahedron()
{
    return TriangulatedSurface::build(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

/** @brief Boundary of the octahedron; vertices 0 and 5 are the poles */
inline TriangulatedSurface octahedron()
{
    return TriangulatedSurface::build(
        6,
        {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}, {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}});
}

}  // namespace vartri
