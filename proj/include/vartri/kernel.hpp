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
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "vartri/errors.hpp"

namespace vartri
{

using Triple = std::array<double, 3>;
using Matrix3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

/** @brief Cosine arguments closer than this to +-1 mark a degenerate triangle */
inline constexpr double kDegeneracyBand = 1e-12;

enum class Geometry { Euclidean, Hyperbolic, Spherical };

/** @brief Curvature of the model space: 0, -1 or +1 */
constexpr int curvature(Geometry g)
{
    switch (g) {
        case Geometry::Euclidean: return 0;
        case Geometry::Hyperbolic: return -1;
        case Geometry::Spherical: return 1;
    }
    return 0;
}

constexpr Geometry geometry_of_curvature(int lambda)
{
    return lambda == 0 ? Geometry::Euclidean : lambda < 0 ? Geometry::Hyperbolic : Geometry::Spherical;
}

inline std::string to_string(Geometry g)
{
    switch (g) {
        case Geometry::Euclidean: return "euclidean";
        case Geometry::Hyperbolic: return "hyperbolic";
        case Geometry::Spherical: return "spherical";
    }
    return "";
}

inline std::optional<Geometry> parse_geometry(const std::string& name)
{
    if (name == "euclidean" || name == "E2") return Geometry::Euclidean;
    if (name == "hyperbolic" || name == "H2") return Geometry::Hyperbolic;
    if (name == "spherical" || name == "S2") return Geometry::Spherical;
    return std::nullopt;
}

namespace detail
{

inline std::string index_name(int i) { return std::to_string(i + 1); }

/** @brief Throws unless @p c lies strictly inside the non-degenerate band */
inline void check_band(double c, const char* what, int i)
{
    if (!(c > -1.0 + kDegeneracyBand && c < 1.0 - kDegeneracyBand)) {
        throw DomainError(
            std::string("degenerate ") + what + ": cosine of " + (what[0] == 't' ? "angle " : "side ") +
            index_name(i) + " is " + std::to_string(c));
    }
}

inline void check_positive(const Triple& x, const char* what)
{
    for (int i = 0; i < 3; ++i) {
        if (!(x[i] > 0.0) || !std::isfinite(x[i])) {
            throw DomainError(std::string(what) + " " + index_name(i) + " must be positive and finite");
        }
    }
}

/** @brief Cosine of angle i from the cosine law */
inline double angle_cosine(Geometry g, const Triple& l, int i)
{
    const double a = l[i], b = l[(i + 1) % 3], c = l[(i + 2) % 3];
    switch (g) {
        case Geometry::Euclidean: return (b * b + c * c - a * a) / (2.0 * b * c);
        case Geometry::Hyperbolic:
            return (std::cosh(b) * std::cosh(c) - std::cosh(a)) / (std::sinh(b) * std::sinh(c));
        case Geometry::Spherical:
            return (std::cos(a) - std::cos(b) * std::cos(c)) / (std::sin(b) * std::sin(c));
    }
    return 0.0;
}

/** @brief sin, sinh or identity: the length function entering the sine law */
inline double sine_like(Geometry g, double x)
{
    switch (g) {
        case Geometry::Euclidean: return x;
        case Geometry::Hyperbolic: return std::sinh(x);
        case Geometry::Spherical: return std::sin(x);
    }
    return x;
}

inline double half_tangent_like(Geometry g, double x)
{
    switch (g) {
        case Geometry::Euclidean: return 0.5 * x;
        case Geometry::Hyperbolic: return std::tanh(0.5 * x);
        case Geometry::Spherical: return std::tan(0.5 * x);
    }
    return x;
}

/** @brief (x_j + x_k - x_i) / 2 */
inline Triple half_sums(const Triple& x)
{
    return {0.5 * (x[1] + x[2] - x[0]), 0.5 * (x[2] + x[0] - x[1]), 0.5 * (x[0] + x[1] - x[2])};
}

/** @brief r_j + r_k */
inline Triple pair_sums(const Triple& r) { return {r[1] + r[2], r[2] + r[0], r[0] + r[1]}; }

inline double relative_spread(const Triple& v)
{
    const auto [lo, hi] = std::minmax({v[0], v[1], v[2]});
    const double scale = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
    return scale > 0.0 ? (hi - lo) / scale : 0.0;
}

}  // namespace detail

/**
 * @brief Inner angles of a triangle with side lengths @p l.
 *
 * Angle i faces side i. Spherical lengths are arc lengths on the unit
 * sphere. Values are computed from half-angle formulas; degeneracy is
 * judged on the cosine-law argument.
 */
inline Triple angles_from_lengths(Geometry g, const Triple& l)
{
    detail::check_positive(l, "length");
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        if (!(l[i] < l[j] + l[k])) {
            throw DomainError(
                "triangle inequality l" + detail::index_name(i) + " < l" + detail::index_name(j) +
                " + l" + detail::index_name(k) + " violated");
        }
    }
    if (g == Geometry::Spherical) {
        for (int i = 0; i < 3; ++i) {
            if (!(l[i] < kPi)) {
                throw DomainError("spherical length l" + detail::index_name(i) + " must be below pi");
            }
        }
        if (!(l[0] + l[1] + l[2] < 2.0 * kPi)) {
            throw DomainError("spherical perimeter l1 + l2 + l3 must be below 2 pi");
        }
    }
    for (int i = 0; i < 3; ++i) {
        detail::check_band(detail::angle_cosine(g, l, i), "triangle", i);
    }

    const double s = 0.5 * (l[0] + l[1] + l[2]);
    Triple theta{};
    for (int i = 0; i < 3; ++i) {
        // s - l_i = (l_j + l_k - l_i) / 2 keeps precision for thin triangles
        const double di = 0.5 * (l[(i + 1) % 3] + l[(i + 2) % 3] - l[i]);
        const double dj = 0.5 * (l[(i + 2) % 3] + l[i] - l[(i + 1) % 3]);
        const double dk = 0.5 * (l[i] + l[(i + 1) % 3] - l[(i + 2) % 3]);
        const double t2 = detail::sine_like(g, dj) * detail::sine_like(g, dk) /
                          (detail::sine_like(g, s) * detail::sine_like(g, di));
        theta[i] = 2.0 * std::atan(std::sqrt(t2));
    }
    return theta;
}

/**
 * @brief Side lengths of a hyperbolic or spherical triangle with angles @p theta.
 *
 * Euclidean triangles are determined by their angles only up to scaling and
 * are rejected.
 */
inline Triple lengths_from_angles(Geometry g, const Triple& theta)
{
    if (g == Geometry::Euclidean) {
        throw DomainError("Euclidean side lengths are determined by angles only up to scaling");
    }
    detail::check_positive(theta, "angle");
    for (int i = 0; i < 3; ++i) {
        if (!(theta[i] < kPi)) {
            throw DomainError("angle " + detail::index_name(i) + " must be below pi");
        }
    }
    const double sum = theta[0] + theta[1] + theta[2];
    if (g == Geometry::Hyperbolic && !(sum < kPi)) {
        throw DomainError("hyperbolic angle sum must be below pi, got " + std::to_string(sum));
    }
    if (g == Geometry::Spherical) {
        if (!(sum > kPi)) {
            throw DomainError("spherical angle sum must exceed pi, got " + std::to_string(sum));
        }
        for (int i = 0; i < 3; ++i) {
            if (!(theta[(i + 1) % 3] + theta[(i + 2) % 3] - theta[i] < kPi)) {
                throw DomainError("spherical angles violate the polar triangle inequality at angle " +
                                  detail::index_name(i));
            }
        }
    }
    for (int i = 0; i < 3; ++i) {
        const double a = theta[i], b = theta[(i + 1) % 3], c = theta[(i + 2) % 3];
        const double ch = (std::cos(a) + std::cos(b) * std::cos(c)) / (std::sin(b) * std::sin(c));
        if (g == Geometry::Hyperbolic) {
            if (!(ch > 1.0 + kDegeneracyBand)) {
                throw DomainError("degenerate angle triple: side " + detail::index_name(i) + " vanishes");
            }
        } else {
            detail::check_band(ch, "polar", i);
        }
    }

    const double S = 0.5 * sum;
    Triple l{};
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        // tanh^2(l/2) or tan^2(l/2); cos S changes sign between the two geometries
        const double sign = g == Geometry::Hyperbolic ? 1.0 : -1.0;
        const double t2 =
            sign * std::cos(S) * std::cos(S - theta[i]) / (std::cos(S - theta[j]) * std::cos(S - theta[k]));
        const double t = std::sqrt(t2);
        l[i] = g == Geometry::Hyperbolic ? 2.0 * std::atanh(t) : 2.0 * std::atan(t);
    }
    return l;
}

/**
 * @brief Right-angled hyperbolic hexagon: the three sides opposite to
 * three pairwise non-adjacent sides @p theta.
 *
 * The relation is symmetric, so the same map also recovers @p theta from
 * the result.
 */
inline Triple hexagon_lengths(const Triple& theta)
{
    detail::check_positive(theta, "hexagon side");
    const Triple r = detail::half_sums(theta);
    Triple l{};
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const double s2 = std::cosh(r[j]) * std::cosh(r[k]) / (std::sinh(theta[j]) * std::sinh(theta[k]));
        l[i] = 2.0 * std::asinh(std::sqrt(s2));
        if (!std::isfinite(l[i])) {
            throw DomainError("hexagon side " + detail::index_name(i) + " overflows");
        }
    }
    return l;
}

/**
 * @brief Angles of the triangle with sides r_j + r_k; angle i sits at the
 * center of the circle of radius r_i.
 */
inline Triple circle_packing_angles(Geometry g, const Triple& r)
{
    detail::check_positive(r, "radius");
    return angles_from_lengths(g, detail::pair_sums(r));
}

/** @brief d(theta_i)/d(l_j) for a triangle with sides @p l */
inline Matrix3 angle_jacobian(Geometry g, const Triple& l)
{
    Triple theta{};
    try {
        theta = angles_from_lengths(g, l);
    } catch (const DomainError& e) {
        throw SingularityError(std::string("angle Jacobian undefined: ") + e.what());
    }
    Matrix3 J;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        // A scales with the triangle, so degeneracy is judged on the angle alone
        if (!(std::sin(theta[i]) > kDegeneracyBand)) {
            throw SingularityError("angle Jacobian undefined: A vanishes");
        }
        const double A = detail::sine_like(g, l[j]) * detail::sine_like(g, l[k]) * std::sin(theta[i]);
        const double diag = detail::sine_like(g, l[i]) / A;
        if (!std::isfinite(diag)) {
            throw SingularityError("angle Jacobian undefined: A underflows");
        }
        J(i, i) = diag;
        J(i, j) = -diag * std::cos(theta[k]);
        J(i, k) = -diag * std::cos(theta[j]);
    }
    return J;
}

/** @brief d(l_i)/d(theta_j) for hexagon_lengths */
inline Matrix3 hexagon_jacobian(const Triple& theta)
{
    const Triple l = hexagon_lengths(theta);
    Matrix3 J;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const double A = std::sinh(l[i]) * std::sinh(theta[j]) * std::sinh(theta[k]);
        const double diag = std::sinh(theta[i]) / A;
        if (!(A > 0.0) || !std::isfinite(diag)) {
            throw SingularityError("hexagon Jacobian undefined: A vanishes");
        }
        J(i, i) = diag;
        J(i, j) = -diag * std::cosh(l[k]);
        J(i, k) = -diag * std::cosh(l[j]);
    }
    return J;
}

/** @brief Lengths, angles and (optionally) radii of one triangle */
struct TriangleData {
    Geometry geometry = Geometry::Euclidean;
    Triple lengths{};
    Triple angles{};
    std::optional<Triple> radii;

    static TriangleData from_lengths(Geometry g, const Triple& l) { return {g, l, angles_from_lengths(g, l), {}}; }
    static TriangleData from_radii(Geometry g, const Triple& r)
    {
        const Triple l = detail::pair_sums(r);
        return {g, l, angles_from_lengths(g, l), r};
    }
};

/** @brief Right-angled hexagon: alternate sides and their opposite sides */
struct HexagonData {
    Triple lengths{};
    Triple opposite{};

    static HexagonData from_opposite(const Triple& theta) { return {hexagon_lengths(theta), theta}; }
};

/**
 * @brief Relative spreads of the law ratios; zero on exact data.
 *
 * @c packing is only set when radii are known.
 */
struct LawResiduals {
    double sine = 0.0;
    double tangent = 0.0;
    std::optional<double> packing;
};

inline LawResiduals sine_tangent_laws(const TriangleData& d)
{
    const Geometry g = d.geometry;
    const Triple r = detail::half_sums(d.angles);
    Triple sine{}, tangent{};
    for (int i = 0; i < 3; ++i) {
        sine[i] = detail::sine_like(g, d.lengths[i]) / std::sin(d.angles[i]);
        tangent[i] = detail::half_tangent_like(g, d.lengths[i]) / std::cos(r[i]);
    }
    LawResiduals out{detail::relative_spread(sine), detail::relative_spread(tangent), {}};
    if (d.radii) {
        Triple packing{};
        for (int i = 0; i < 3; ++i) {
            packing[i] = detail::sine_like(g, (*d.radii)[i]) * std::tan(0.5 * d.angles[i]);
        }
        out.packing = detail::relative_spread(packing);
    }
    return out;
}

inline LawResiduals sine_tangent_laws(const HexagonData& d)
{
    const Triple r = detail::half_sums(d.opposite);
    Triple sine{}, tangent{};
    for (int i = 0; i < 3; ++i) {
        sine[i] = std::sinh(d.lengths[i]) / std::sinh(d.opposite[i]);
        tangent[i] = std::tanh(0.5 * d.lengths[i]) * std::cosh(r[i]);
    }
    return {detail::relative_spread(sine), detail::relative_spread(tangent), {}};
}

/**
 * @brief The quantity A_ijk = sin y_i sin x_j sin x_k for spherical data.
 *
 * @p x are the angles of a spherical triangle, y its side lengths. The
 * residual is the larger of |A^2 - (1 - sum cos^2 x - 2 prod cos x)| and the
 * spread of A over index rotations.
 */
struct AreaQuantity {
    double value = 0.0;
    double residual = 0.0;
    Triple rotations{};
};

inline AreaQuantity area_quantity(const Triple& x)
{
    const Triple y = lengths_from_angles(Geometry::Spherical, x);
    AreaQuantity out;
    for (int i = 0; i < 3; ++i) {
        out.rotations[i] = std::sin(y[i]) * std::sin(x[(i + 1) % 3]) * std::sin(x[(i + 2) % 3]);
    }
    const double c0 = std::cos(x[0]), c1 = std::cos(x[1]), c2 = std::cos(x[2]);
    const double q = 1.0 - c0 * c0 - c1 * c1 - c2 * c2 - 2.0 * c0 * c1 * c2;
    out.value = out.rotations[0];
    out.residual = std::abs(out.value * out.value - q);
    for (int i = 1; i < 3; ++i) {
        out.residual = std::max(out.residual, std::abs(out.rotations[i] - out.rotations[0]));
    }
    return out;
}

}  // namespace vartri
