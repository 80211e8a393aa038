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

// JSON formats.
//
//   mesh     {"vertices": N, "triangles": [[i,j,k], ...], "mode": "closed"|"bordered"}
//   metric   {"geometry": "euclidean"|"hyperbolic"|"spherical",
//             "edge_lengths": {"i-j": l, ...}}  or  {"geometry": ..., "radii": {"v0": r, ...}}
//   hexagons {"edge_lengths": {"i-j": l, ...}}
//   targets  {"v0": k, ...}, {"i-j": psi, ...}, a plain array, or any of these under "values"
//
// Vertices are keyed "v<i>" or "<i>"; edges by TriangulatedSurface::edge_label.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vartri/curvature.hpp"
#include "vartri/errors.hpp"
#include "vartri/feasibility.hpp"
#include "vartri/mesh.hpp"
#include "vartri/solver.hpp"

namespace vartri::io
{

using Json = nlohmann::json;

/** @brief Malformed or inconsistent input file */
class FormatError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

inline Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline std::string vertex_key(int v) { return "v" + std::to_string(v); }

inline int parse_vertex_key(const std::string& key, int n)
{
    const std::string digits = !key.empty() && key[0] == 'v' ? key.substr(1) : key;
    std::size_t pos = 0;
    int v = -1;
    try {
        v = std::stoi(digits, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (digits.empty() || pos != digits.size() || v < 0 || v >= n) {
        throw FormatError("unknown vertex key \"" + key + "\"");
    }
    return v;
}

inline TriangulatedSurface mesh_from_json(const Json& j)
{
    try {
        const int n = j.at("vertices").get<int>();
        std::vector<Triangle> tris;
        for (const auto& t : j.at("triangles")) {
            if (!t.is_array() || t.size() != 3) {
                throw FormatError("each triangle must list three vertices");
            }
            tris.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
        }
        const std::string mode = j.value("mode", "closed");
        if (mode != "closed" && mode != "bordered") {
            throw FormatError("mode must be \"closed\" or \"bordered\"");
        }
        return TriangulatedSurface::build(n, std::move(tris),
                                          mode == "closed" ? SurfaceMode::Closed : SurfaceMode::Bordered);
    } catch (const Json::exception& e) {
        throw FormatError(std::string("mesh: ") + e.what());
    }
}

inline Json mesh_to_json(const TriangulatedSurface& s)
{
    Json tris = Json::array();
    for (const auto& t : s.triangles()) {
        tris.push_back({t[0], t[1], t[2]});
    }
    return {{"vertices", s.vertex_count()},
            {"triangles", tris},
            {"mode", s.mode() == SurfaceMode::Closed ? "closed" : "bordered"}};
}

/** @brief Values keyed by vertex (per_edge false) or edge label */
inline std::vector<double> keyed_values(const TriangulatedSurface& s, const Json& j, bool per_edge)
{
    const Json& v = j.is_object() && j.contains("values") ? j.at("values") : j;
    const int n = per_edge ? s.edge_count() : s.vertex_count();
    std::vector<double> out(n, 0.0);
    std::vector<bool> seen(n, false);
    try {
        if (v.is_array()) {
            if (static_cast<int>(v.size()) != n) {
                throw FormatError("expected " + std::to_string(n) + " values, got " + std::to_string(v.size()));
            }
            for (int i = 0; i < n; ++i) {
                out[i] = v[i].get<double>();
            }
            return out;
        }
        if (!v.is_object()) {
            throw FormatError("values must be an object or an array");
        }
        for (const auto& [key, val] : v.items()) {
            int i = -1;
            if (per_edge) {
                const auto e = s.find_edge(key);
                if (!e) {
                    throw FormatError("unknown edge key \"" + key + "\"");
                }
                i = *e;
            } else {
                i = parse_vertex_key(key, n);
            }
            if (seen[i]) {
                throw FormatError("duplicate key for " + key);
            }
            seen[i] = true;
            out[i] = val.get<double>();
        }
    } catch (const Json::exception& e) {
        throw FormatError(e.what());
    }
    for (int i = 0; i < n; ++i) {
        if (!seen[i]) {
            throw FormatError("missing value for " + (per_edge ? s.edge_label(i) : vertex_key(i)));
        }
    }
    return out;
}

inline Json keyed_json(const TriangulatedSurface& s, const std::vector<double>& values, bool per_edge)
{
    Json out = Json::object();
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[per_edge ? s.edge_label(static_cast<int>(i)) : vertex_key(static_cast<int>(i))] = values[i];
    }
    return out;
}

inline Geometry geometry_from_json(const Json& j)
{
    if (!j.contains("geometry")) {
        throw FormatError("metric needs a \"geometry\"");
    }
    const auto g = parse_geometry(j.at("geometry").get<std::string>());
    if (!g) {
        throw FormatError("unknown geometry " + j.at("geometry").dump());
    }
    return *g;
}

/** @brief A metric file; radii are turned into their packing metric */
inline PolyhedralMetric metric_from_json(const TriangulatedSurface& s, const Json& j)
{
    const Geometry g = geometry_from_json(j);
    if (j.contains("radii")) {
        return CirclePacking{keyed_values(s, j.at("radii"), false)}.to_metric(s, g);
    }
    if (j.contains("edge_lengths")) {
        return PolyhedralMetric::make(s, g, keyed_values(s, j.at("edge_lengths"), true));
    }
    throw FormatError("metric needs \"edge_lengths\" or \"radii\"");
}

inline HexagonMetric hexagon_metric_from_json(const IdealSurface& is, const Json& j)
{
    if (!j.contains("edge_lengths")) {
        throw FormatError("hexagon metric needs \"edge_lengths\"");
    }
    return HexagonMetric::make(is, keyed_values(is.surface(), j.at("edge_lengths"), true));
}

inline Json curvature_to_json(const TriangulatedSurface& s, const CurvatureVector& k)
{
    return {{"kind", to_string(k.kind)}, {"h", k.h}, {"values", keyed_json(s, k.values, k.per_edge())}};
}

inline Json verdict_to_json(const FeasibilityVerdict& v)
{
    Json out{{"feasible", v.feasible},
             {"exhaustive", v.exhaustive},
             {"violated", to_string(v.violated)},
             {"message", v.describe()}};
    if (v.violated == Constraint::VertexBound) {
        out["vertex"] = vertex_key(v.vertex);
    }
    if (v.violated == Constraint::SubsetBound) {
        Json subset = Json::array();
        for (int x : v.subset) {
            subset.push_back(vertex_key(x));
        }
        out["subset"] = subset;
        out["faces"] = v.faces;
    }
    if (v.violated != Constraint::None) {
        out["lhs"] = v.lhs;
        out["rhs"] = v.rhs;
    }
    return out;
}

/** @brief {iterations, final_residual, gauge, radii|lengths, diagnosis, status} */
inline Json report_to_json(const TriangulatedSurface& s, const SolveReport& r, bool per_edge)
{
    Json out{{"status", to_string(r.status)},
             {"iterations", r.iterations},
             {"gauge", r.gauge},
             {"diagnosis", r.diagnosis}};
    out["final_residual"] = std::isfinite(r.final_residual) ? Json(r.final_residual) : Json(nullptr);
    Json vals = Json::object();
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        const std::string key = per_edge ? s.edge_label(static_cast<int>(i)) : vertex_key(static_cast<int>(i));
        vals[key] = std::isfinite(r.values[i]) ? Json(r.values[i]) : Json(nullptr);
    }
    out[per_edge ? "lengths" : "radii"] = vals;
    return out;
}

inline Json error_json(const std::string& type, const std::string& message)
{
    return {{"error", {{"type", type}, {"message", message}}}};
}

}  // namespace vartri::io
