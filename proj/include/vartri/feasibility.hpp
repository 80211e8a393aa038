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

// Membership of a vertex-curvature vector k_0 in the set of curvatures
// realized by circle packings:
//
//   k(v) < 2 pi                                  for every vertex v
//   sum_{v in I} k(v) > 2 pi |I| - pi |F_I|      for every subset I
//
// where F_I holds the triangles meeting I. In the Euclidean case the sum
// over all vertices must equal 2 pi chi and the subset bound is only
// imposed on proper subsets.

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vartri/errors.hpp"
#include "vartri/kernel.hpp"
#include "vartri/mesh.hpp"

namespace vartri
{

enum class Constraint { None, VertexBound, SubsetBound, GaussBonnet };

inline std::string to_string(Constraint c)
{
    switch (c) {
        case Constraint::None: return "none";
        case Constraint::VertexBound: return "vertex-bound";
        case Constraint::SubsetBound: return "subset-bound";
        case Constraint::GaussBonnet: return "gauss-bonnet";
    }
    return "";
}

/**
 * @brief Outcome of a feasibility check.
 *
 * When @c exhaustive is false every subset was not examined and
 * @c feasible only means that no violation was found.
 */
struct FeasibilityVerdict {
    bool feasible = true;
    bool exhaustive = true;
    Constraint violated = Constraint::None;
    int vertex = -1;
    std::vector<int> subset;
    int faces = 0;  ///< |F_I| for a subset witness
    double lhs = 0.0;
    double rhs = 0.0;

    std::string describe() const
    {
        std::ostringstream os;
        os.precision(17);
        switch (violated) {
            case Constraint::None:
                os << (exhaustive ? "feasible" : "no violation found");
                break;
            case Constraint::VertexBound:
                os << "k(" << vertex << ") = " << lhs << " is not below 2 pi";
                break;
            case Constraint::SubsetBound:
                os << "sum of k over I = {";
                for (std::size_t i = 0; i < subset.size(); ++i) {
                    os << (i ? "," : "") << subset[i];
                }
                os << "} is " << lhs << ", not above 2 pi |I| - pi |F_I| = " << rhs;
                break;
            case Constraint::GaussBonnet:
                os << "sum of k is " << lhs << " but 2 pi chi is " << rhs;
                break;
        }
        return os.str();
    }
};

struct FeasibilityOptions {
    int exhaustive_cap = 20;
    bool sampling = false;
    std::size_t samples = 1 << 16;
    std::uint64_t seed = 0;
    /// strict inequalities must hold by this margin, relative to the bound scale
    double tolerance = 1e-12;
    double gauss_bonnet_tolerance = 1e-9;
};

namespace detail
{

struct SubsetScan {
    const TriangulatedSurface& s;
    const std::vector<double>& k;
    std::vector<std::uint64_t> face_masks;
    double tolerance;

    SubsetScan(const TriangulatedSurface& s_, const std::vector<double>& k_, double tol)
        : s(s_), k(k_), tolerance(tol)
    {
        for (const Triangle& t : s.triangles()) {
            face_masks.push_back((std::uint64_t{1} << t[0]) | (std::uint64_t{1} << t[1]) | (std::uint64_t{1} << t[2]));
        }
    }

    /** @brief Records @p mask in @p best when it violates more than the current witness */
    void test(std::uint64_t mask, FeasibilityVerdict& best, double& worst) const
    {
        double lhs = 0.0;
        int size = 0;
        for (int v = 0; v < s.vertex_count(); ++v) {
            if (mask >> v & 1) {
                lhs += k[v];
                ++size;
            }
        }
        int faces = 0;
        for (std::uint64_t fm : face_masks) {
            faces += (fm & mask) != 0;
        }
        const double rhs = 2 * kPi * size - kPi * faces;
        const double margin = lhs - rhs;
        if (margin <= tolerance * std::max(1.0, std::abs(rhs)) && -margin > worst) {
            worst = -margin;
            best.feasible = false;
            best.violated = Constraint::SubsetBound;
            best.subset.clear();
            for (int v = 0; v < s.vertex_count(); ++v) {
                if (mask >> v & 1) {
                    best.subset.push_back(v);
                }
            }
            best.faces = faces;
            best.lhs = lhs;
            best.rhs = rhs;
        }
    }
};

}  // namespace detail

/**
 * @brief Checks @p k against the inequalities above.
 *
 * Among violated constraints the vertex bounds are reported first, then
 * the subset with the largest violation. Exhaustive up to
 * FeasibilityOptions::exhaustive_cap vertices; beyond that only with
 * @c sampling set.
 */
inline FeasibilityVerdict feasibility_check(const TriangulatedSurface& s,
                                            Geometry g,
                                            const std::vector<double>& k,
                                            const FeasibilityOptions& opt = {})
{
    if (g == Geometry::Spherical) {
        throw DomainError("feasibility is only characterized for euclidean and hyperbolic packings");
    }
    const int n = s.vertex_count();
    if (static_cast<int>(k.size()) != n) {
        throw MeshError("expected " + std::to_string(n) + " target values, got " + std::to_string(k.size()));
    }
    for (double x : k) {
        if (!std::isfinite(x)) {
            throw DomainError("target curvatures must be finite");
        }
    }
    const bool exhaustive = n <= opt.exhaustive_cap && n < 63;
    if (!exhaustive && !opt.sampling) {
        throw DomainError(std::to_string(n) + " vertices exceed the exhaustive cap of " +
                          std::to_string(opt.exhaustive_cap) + "; enable sampling");
    }
    if (n >= 64) {
        throw DomainError("subset masks are limited to 63 vertices");
    }

    FeasibilityVerdict out;
    out.exhaustive = exhaustive;
    for (int v = 0; v < n; ++v) {
        if (k[v] >= 2 * kPi * (1.0 - opt.tolerance)) {
            out.feasible = false;
            out.violated = Constraint::VertexBound;
            out.vertex = v;
            out.lhs = k[v];
            out.rhs = 2 * kPi;
            return out;
        }
    }
    if (g == Geometry::Euclidean) {
        double sum = 0.0;
        for (double x : k) {
            sum += x;
        }
        const double chi = 2 * kPi * s.euler_characteristic();
        if (std::abs(sum - chi) > opt.gauss_bonnet_tolerance) {
            out.feasible = false;
            out.violated = Constraint::GaussBonnet;
            out.lhs = sum;
            out.rhs = chi;
            return out;
        }
    }

    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    const std::uint64_t last = g == Geometry::Euclidean ? full - 1 : full;
    detail::SubsetScan scan(s, k, opt.tolerance);
    double worst = -1.0;
    if (exhaustive) {
        for (std::uint64_t mask = 1; mask <= last; ++mask) {
            if (mask == full && g == Geometry::Euclidean) {
                continue;
            }
            scan.test(mask, out, worst);
        }
    } else {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::uint64_t> bits(1, full);
        for (std::size_t i = 0; i < opt.samples; ++i) {
            const std::uint64_t mask = bits(rng);
            if (mask == full && g == Geometry::Euclidean) {
                continue;
            }
            scan.test(mask, out, worst);
        }
    }
    return out;
}

}  // namespace vartri
