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

// Closed 1-forms sum_i f(y_i) dg(t_i) on a single triangle or hexagon and
// their integrals. Each family fixes which data plays the role of the
// variable t (lengths or radii) and of the output y (angles or lengths);
// u_i = g(t_i) are the coordinates in which the integral is convex or
// concave.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "vartri/kernel.hpp"
#include "vartri/quadrature.hpp"

namespace vartri
{

enum class Family {
    EuclideanLength,         ///< (i)   f(theta) = int sin^h,       g' = l^(-h-1)
    SphericalLength,         ///< (ii)  f(theta) = int sin^h,       g' = sin^(-h-1)(l)
    EuclideanPacking,        ///< (iii) f(theta) = int cot^h(t/2),  g' = r^(-h-1)
    HyperbolicPacking,       ///< (iv)  f(theta) = int cot^h(t/2),  g' = sinh^(-h-1)(r)
    HyperbolicAnglePacking,  ///< (v)   f(l) = int tanh^h(t/2),     g' = cos^(-h-1)(r), theta_i = r_j + r_k
    Hexagon,                 ///< (vi)  f(l) = int coth^h(t/2),     g' = cosh^(-h-1)(r), theta_i = r_j + r_k
};

inline constexpr std::array<Family, 6> kAllFamilies{
    Family::EuclideanLength,        Family::SphericalLength, Family::EuclideanPacking,
    Family::HyperbolicPacking,      Family::HyperbolicAnglePacking, Family::Hexagon};

inline std::string to_string(Family f)
{
    switch (f) {
        case Family::EuclideanLength: return "euclidean-length";
        case Family::SphericalLength: return "spherical-length";
        case Family::EuclideanPacking: return "euclidean-packing";
        case Family::HyperbolicPacking: return "hyperbolic-packing";
        case Family::HyperbolicAnglePacking: return "hyperbolic-angle-packing";
        case Family::Hexagon: return "hexagon";
    }
    return "";
}

struct Interval {
    double lo;
    double hi;
    bool contains(double x) const { return x > lo && x < hi; }
};

/**
 * @brief One family together with its exponent and integration base points.
 *
 * Base points only shift the energy by a constant and the gradient by a
 * per-coordinate constant. @c f_base_moved records that the natural base 0
 * was not integrable for this exponent and pi/2 was used instead.
 */
struct EnergySpec {
    Family family = Family::EuclideanLength;
    double h = 0.0;
    double f_base = kPi / 2;
    double g_base = 1.0;
    bool f_base_moved = false;

    static EnergySpec make(Family family, double h)
    {
        EnergySpec s;
        s.family = family;
        s.h = h;
        s.g_base = family == Family::SphericalLength ? kPi / 2 : 1.0;
        switch (family) {
            case Family::EuclideanLength:
            case Family::SphericalLength: s.f_base = kPi / 2; break;
            case Family::EuclideanPacking:
            case Family::HyperbolicPacking:
            case Family::Hexagon:
                s.f_base_moved = !(h < 1.0);
                s.f_base = s.f_base_moved ? kPi / 2 : 0.0;
                break;
            case Family::HyperbolicAnglePacking:
                s.f_base_moved = !(h > -1.0);
                s.f_base = s.f_base_moved ? kPi / 2 : 0.0;
                break;
        }
        return s;
    }

    /**
     * @brief Packing energy whose gradient is sum of int_{pi/2}^{theta} tan^h(t/2),
     * i.e. the k_h curvature up to the constant (4 - deg) pi / 2.
     */
    static EnergySpec vertex_curvature(Geometry g, double h)
    {
        if (g == Geometry::Spherical) {
            throw DomainError("no packing energy is available for spherical geometry");
        }
        auto s = make(g == Geometry::Euclidean ? Family::EuclideanPacking : Family::HyperbolicPacking, -h);
        s.f_base = kPi / 2;
        s.f_base_moved = false;
        return s;
    }

    EnergySpec with_f_base(double base) const
    {
        EnergySpec s = *this;
        s.f_base = base;
        s.f_base_moved = false;
        return s;
    }

    Geometry geometry() const
    {
        switch (family) {
            case Family::EuclideanLength:
            case Family::EuclideanPacking: return Geometry::Euclidean;
            case Family::SphericalLength: return Geometry::Spherical;
            default: return Geometry::Hyperbolic;
        }
    }

    /**
     * @brief Sign of the Hessian: true for (i) and (ii).
     *
     * (v) is concave in this chart. Raising an angle r_j + r_k of a hyperbolic
     * triangle shortens the opposite side, so the angle-to-length map is
     * decreasing along the diagonal.
     */
    bool convex() const
    {
        return family == Family::EuclideanLength || family == Family::SphericalLength;
    }

    /** @brief Euclidean families carry the scaling kernel */
    bool semidefinite() const
    {
        return family == Family::EuclideanLength || family == Family::EuclideanPacking;
    }

    /** @brief true when y are angles (families i-iv), false when lengths */
    bool output_is_angle() const
    {
        return family != Family::HyperbolicAnglePacking && family != Family::Hexagon;
    }

    Interval variable_domain() const
    {
        constexpr double inf = std::numeric_limits<double>::infinity();
        switch (family) {
            case Family::SphericalLength: return {0.0, kPi};
            case Family::HyperbolicAnglePacking: return {-kPi / 2, kPi / 2};
            case Family::Hexagon: return {-inf, inf};
            default: return {0.0, inf};
        }
    }

    Interval output_domain() const
    {
        return output_is_angle() ? Interval{0.0, kPi} : Interval{0.0, std::numeric_limits<double>::infinity()};
    }
};

namespace detail
{

inline void check_in(const Interval& d, double x, const char* what)
{
    if (!d.contains(x)) {
        throw DomainError(std::string(what) + " " + std::to_string(x) + " outside (" + std::to_string(d.lo) +
                          ", " + std::to_string(d.hi) + ")");
    }
}

inline const Matrix3& pair_sum_matrix()
{
    static const Matrix3 P = (Matrix3() << 0, 1, 1, 1, 0, 1, 1, 1, 0).finished();
    return P;
}

/** @brief d r / d theta for r = half_sums(theta) */
inline const Matrix3& half_sum_matrix()
{
    static const Matrix3 M = (Matrix3() << -1, 1, 1, 1, -1, 1, 1, 1, -1).finished() * 0.5;
    return M;
}

/** @brief int_1^t w(s) ds on (0, inf); below 1 the substitution s = e^x tames s -> 0 */
template <class W>
double integrate_from_one(W&& w, double t)
{
    if (t >= 1.0) {
        return quad::integrate(w, 1.0, t);
    }
    return quad::integrate([&](double x) { const double s = std::exp(x); return w(s) * s; }, 0.0, std::log(t));
}

/** @brief Whether @p p is an integer in [lo, hi] */
inline bool integer_in(double p, int lo, int hi) { return p == std::nearbyint(p) && p >= lo && p <= hi; }

// Antiderivatives for the integer exponents met on the usual h grid.
// Each returns nullopt outside its table.

/** @brief F with F' = sinh^p */
inline std::optional<double> sinh_power_antiderivative(double p, double t)
{
    if (!integer_in(p, -3, 1)) {
        return std::nullopt;
    }
    const double lt = std::log(std::tanh(0.5 * t));
    switch (static_cast<int>(p)) {
        case 1: return std::cosh(t);
        case 0: return t;
        case -1: return lt;
        case -2: return -1.0 / std::tanh(t);
        default: return -0.5 * std::cosh(t) / (std::sinh(t) * std::sinh(t)) - 0.5 * lt;
    }
}

/** @brief F with F' = tanh^p */
inline std::optional<double> tanh_power_antiderivative(double p, double x)
{
    if (!integer_in(p, -3, 3)) {
        return std::nullopt;
    }
    const double e = std::exp(-2.0 * x);
    const double log_cosh = x + std::log1p(e) - std::log(2.0);
    const double log_sinh = x + std::log1p(-e) - std::log(2.0);
    const double th = std::tanh(x);
    switch (static_cast<int>(p)) {
        case 0: return x;
        case 1: return log_cosh;
        case 2: return x - th;
        case 3: return log_cosh - 0.5 * th * th;
        case -1: return log_sinh;
        case -2: return x - 1.0 / th;
        default: return log_sinh - 0.5 / (th * th);
    }
}

/** @brief int_0^x cosh^p (hyperbolic) or cos^p */
inline std::optional<double> cosh_power_integral(double p, double x, bool hyperbolic)
{
    if (!integer_in(p, -2, 2)) {
        return std::nullopt;
    }
    const double c = hyperbolic ? std::cosh(x) : std::cos(x);
    const double sn = hyperbolic ? std::sinh(x) : std::sin(x);
    switch (static_cast<int>(p)) {
        case 0: return x;
        case 1: return sn;
        case 2: return 0.5 * (x + sn * c);
        case -1: return hyperbolic ? 2.0 * std::atan(std::tanh(0.5 * x)) : std::atanh(sn);
        default: return sn / c;
    }
}

}  // namespace detail

/** @brief Integrand of f at @p y */
inline double f_integrand(const EnergySpec& s, double y)
{
    switch (s.family) {
        case Family::EuclideanLength:
        case Family::SphericalLength: return std::pow(std::sin(y), s.h);
        case Family::EuclideanPacking:
        case Family::HyperbolicPacking: return std::pow(std::tan(0.5 * y), -s.h);
        case Family::HyperbolicAnglePacking: return std::pow(std::tanh(0.5 * y), s.h);
        case Family::Hexagon: return std::pow(std::tanh(0.5 * y), -s.h);
    }
    return 0.0;
}

/** @brief f(y) = int_{f_base}^{y} f_integrand */
inline double f_value(const EnergySpec& s, double y)
{
    detail::check_in(s.output_domain(), y, s.output_is_angle() ? "angle" : "length");
    auto w = [&](double t) { return f_integrand(s, t); };
    if (s.f_base == 0.0) {
        // the integrand behaves like y^h (i, ii, v) or y^-h (iii, iv, vi) near 0
        const bool power_is_h = s.family == Family::EuclideanLength || s.family == Family::SphericalLength ||
                                s.family == Family::HyperbolicAnglePacking;
        if (power_is_h ? !(s.h > -1.0) : !(s.h < 1.0)) {
            throw DomainError("f integrand is not integrable at base 0 for h = " + std::to_string(s.h));
        }
        return quad::integrate_singular_start(w, 0.0, y);
    }
    return quad::integrate(w, s.f_base, y);
}

/** @brief g'(t), the density of the u coordinate */
inline double g_derivative(const EnergySpec& s, double t)
{
    const double p = -s.h - 1.0;
    switch (s.family) {
        case Family::EuclideanLength:
        case Family::EuclideanPacking: return std::pow(t, p);
        case Family::SphericalLength: return std::pow(std::sin(t), p);
        case Family::HyperbolicPacking: return std::pow(std::sinh(t), p);
        case Family::HyperbolicAnglePacking: return std::pow(std::cos(t), p);
        case Family::Hexagon: return std::pow(std::cosh(t), p);
    }
    return 0.0;
}

/** @brief u = int_{g_base}^{t} g' */
inline double u_of_variable(const EnergySpec& s, double t)
{
    detail::check_in(s.variable_domain(), t, "variable");
    if (s.h == -1.0) {
        return t - s.g_base;
    }
    switch (s.family) {
        case Family::EuclideanLength:
        case Family::EuclideanPacking:
            return s.h == 0.0 ? std::log(t) : (1.0 - std::pow(t, -s.h)) / s.h;
        case Family::HyperbolicPacking:
            if (s.h == 0.0) {
                return std::log(std::tanh(0.5 * t) / std::tanh(0.5));
            }
            if (const auto F = detail::sinh_power_antiderivative(-s.h - 1.0, 1.0)) {
                return *detail::sinh_power_antiderivative(-s.h - 1.0, t) - *F;
            }
            return detail::integrate_from_one([&](double x) { return g_derivative(s, x); }, t);
        default: return quad::integrate([&](double x) { return g_derivative(s, x); }, s.g_base, t);
    }
}

/** @brief Inverse of u_of_variable; DomainError when @p u is not attained */
inline double variable_of_u(const EnergySpec& s, double u)
{
    if (!std::isfinite(u)) {
        throw DomainError("u coordinate must be finite");
    }
    const Interval d = s.variable_domain();
    auto checked = [&](double t) {
        detail::check_in(d, t, "u coordinate maps to variable");
        return t;
    };
    if (s.h == -1.0) {
        return checked(u + s.g_base);
    }
    if (s.family == Family::EuclideanLength || s.family == Family::EuclideanPacking) {
        if (s.h == 0.0) {
            return checked(std::exp(u));
        }
        const double base = 1.0 - s.h * u;
        if (!(base > 0.0)) {
            throw DomainError("u coordinate " + std::to_string(u) + " is outside the image of (0, inf)");
        }
        return checked(std::pow(base, -1.0 / s.h));
    }
    if (s.family == Family::HyperbolicPacking && s.h == 0.0) {
        const double q = std::exp(u) * std::tanh(0.5);
        if (!(q < 1.0)) {
            throw DomainError("u coordinate " + std::to_string(u) + " is outside the image of (0, inf)");
        }
        return checked(2.0 * std::atanh(q));
    }
    return quad::invert_increasing([&](double t) { return u_of_variable(s, t); }, u, d.lo, d.hi, s.g_base);
}

inline Triple u_of_variables(const EnergySpec& s, const Triple& t)
{
    return {u_of_variable(s, t[0]), u_of_variable(s, t[1]), u_of_variable(s, t[2])};
}

inline Triple variables_of_u(const EnergySpec& s, const Triple& u)
{
    return {variable_of_u(s, u[0]), variable_of_u(s, u[1]), variable_of_u(s, u[2])};
}

/** @brief The output triple y (angles or lengths) determined by variables @p t */
inline Triple output_of_variables(const EnergySpec& s, const Triple& t)
{
    for (double x : t) {
        detail::check_in(s.variable_domain(), x, "variable");
    }
    switch (s.family) {
        case Family::EuclideanLength: return angles_from_lengths(Geometry::Euclidean, t);
        case Family::SphericalLength: return angles_from_lengths(Geometry::Spherical, t);
        case Family::EuclideanPacking: return circle_packing_angles(Geometry::Euclidean, t);
        case Family::HyperbolicPacking: return circle_packing_angles(Geometry::Hyperbolic, t);
        case Family::HyperbolicAnglePacking:
            return lengths_from_angles(Geometry::Hyperbolic, detail::pair_sums(t));
        case Family::Hexagon: return hexagon_lengths(detail::pair_sums(t));
    }
    return {};
}

/** @brief d y_i / d t_j */
inline Matrix3 output_jacobian(const EnergySpec& s, const Triple& t)
{
    switch (s.family) {
        case Family::EuclideanLength: return angle_jacobian(Geometry::Euclidean, t);
        case Family::SphericalLength: return angle_jacobian(Geometry::Spherical, t);
        case Family::EuclideanPacking:
            return angle_jacobian(Geometry::Euclidean, detail::pair_sums(t)) * detail::pair_sum_matrix();
        case Family::HyperbolicPacking:
            return angle_jacobian(Geometry::Hyperbolic, detail::pair_sums(t)) * detail::pair_sum_matrix();
        case Family::HyperbolicAnglePacking: {
            const Triple l = output_of_variables(s, t);
            const Matrix3 dtheta_dl = angle_jacobian(Geometry::Hyperbolic, l);
            Eigen::FullPivLU<Matrix3> lu(dtheta_dl);
            if (!lu.isInvertible()) {
                throw SingularityError("angle Jacobian is not invertible");
            }
            return lu.inverse() * detail::pair_sum_matrix();
        }
        case Family::Hexagon: return hexagon_jacobian(detail::pair_sums(t)) * detail::pair_sum_matrix();
    }
    return Matrix3::Zero();
}

/** @brief (f(y_1), f(y_2), f(y_3)) at variables @p t */
inline Triple triangle_gradient_at(const EnergySpec& s, const Triple& t)
{
    const Triple y = output_of_variables(s, t);
    return {f_value(s, y[0]), f_value(s, y[1]), f_value(s, y[2])};
}

/** @brief Gradient of the energy in u coordinates */
inline Triple triangle_gradient(const EnergySpec& s, const Triple& u)
{
    return triangle_gradient_at(s, variables_of_u(s, u));
}

/** @brief Hessian of the energy in u coordinates, evaluated at variables @p t */
inline Matrix3 triangle_hessian_at(const EnergySpec& s, const Triple& t)
{
    const Triple y = output_of_variables(s, t);
    const Matrix3 J = output_jacobian(s, t);
    Matrix3 H;
    for (int i = 0; i < 3; ++i) {
        const double fi = f_integrand(s, y[i]);
        for (int j = 0; j < 3; ++j) {
            H(i, j) = fi * J(i, j) / g_derivative(s, t[j]);
        }
    }
    return H;
}

inline Matrix3 triangle_hessian(const EnergySpec& s, const Triple& u)
{
    return triangle_hessian_at(s, variables_of_u(s, u));
}

/**
 * @brief Direction in u coordinates along which Euclidean data is rescaled;
 * the Hessian kernel of the semidefinite families. Unit length.
 */
inline Eigen::Vector3d scaling_direction(const EnergySpec& s, const Triple& t)
{
    if (!s.semidefinite()) {
        throw DomainError("only Euclidean families are scale invariant");
    }
    Eigen::Vector3d z;
    for (int i = 0; i < 3; ++i) {
        z[i] = g_derivative(s, t[i]) * t[i];
    }
    return z.normalized();
}

/**
 * @brief Integral of the form along the straight segment in variable space
 * from @p t_from to @p t_to.
 *
 * The pull-back sum f(y_i) g'(t_i) dt_i is integrated, so no coordinate
 * inversion is needed along the way.
 */
inline double segment_energy(const EnergySpec& s, const Triple& t_from, const Triple& t_to)
{
    Triple d{t_to[0] - t_from[0], t_to[1] - t_from[1], t_to[2] - t_from[2]};
    if (d == Triple{0, 0, 0}) {
        return 0.0;
    }
    auto integrand = [&](double lambda) {
        Triple t{};
        for (int i = 0; i < 3; ++i) {
            t[i] = t_from[i] + lambda * d[i];
        }
        const Triple f = triangle_gradient_at(s, t);
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
            acc += f[i] * g_derivative(s, t[i]) * d[i];
        }
        return acc;
    };
    return quad::integrate(integrand, 0.0, 1.0);
}

/** @brief Energy at @p u relative to @p u_base */
inline double triangle_energy(const EnergySpec& s, const Triple& u, const Triple& u_base)
{
    if (u == u_base) {
        return 0.0;
    }
    return segment_energy(s, variables_of_u(s, u_base), variables_of_u(s, u));
}

/** @brief Energy accumulated along a polyline of variable-space points */
inline double path_energy(const EnergySpec& s, std::span<const Triple> points)
{
    double acc = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        acc += segment_energy(s, points[i - 1], points[i]);
    }
    return acc;
}

/**
 * @brief max_{i<j} |d G_i / d u_j - d G_j / d u_i| for a candidate form
 * G(t), by central differences in variable space, divided by
 * max(1, largest |d G_i / d u_j|).
 *
 * Zero up to truncation error exactly when the form is closed. Steps are
 * relative to the variable and shrink when the stencil leaves the domain.
 */
template <class Form>
double closedness_residual_of(const EnergySpec& s, Form&& form, const Triple& t, double step = 1e-5)
{
    Matrix3 D;
    for (int j = 0; j < 3; ++j) {
        double hj = step * std::max(0.1, std::abs(t[j]));
        auto at = [&](double k) {
            Triple x = t;
            x[j] += k * hj;
            return form(x);
        };
        // five-point stencil, fourth order
        Triple p1{}, m1{}, p2{}, m2{};
        for (int tries = 0;; ++tries) {
            try {
                p1 = at(1), m1 = at(-1), p2 = at(2), m2 = at(-2);
                break;
            } catch (const DomainError&) {
                // the stencil left the domain; shrink toward the point
                if (tries == 6) {
                    throw;
                }
                hj *= 0.25;
            }
        }
        const double du_dt = g_derivative(s, t[j]);
        for (int i = 0; i < 3; ++i) {
            D(i, j) = (8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * hj) / du_dt;
        }
    }
    double r = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            r = std::max(r, std::abs(D(i, j) - D(j, i)));
        }
    }
    return r / std::max(1.0, D.cwiseAbs().maxCoeff());
}

inline double closedness_residual(const EnergySpec& s, const Triple& u, double step = 1e-5)
{
    return closedness_residual_of(
        s, [&](const Triple& t) { return triangle_gradient_at(s, t); }, variables_of_u(s, u), step);
}

// ---------------------------------------------------------------------------
// Length-coordinate forms for the edge curvatures psi_h.
//
// Swapping the roles of f and g in families (v) and (vi) with exponent
// -h-1 gives closed forms sum_i G(r_i) dV(l_i), G(r) = int_0^r cos^h or
// cosh^h, V(l) = int_1^l of coth^(h+1)(t/2) (triangles) or tanh^(h+1)(t/2)
// (hexagons). Summed over faces, their gradient is the psi_h curvature.

enum class DualForm { HyperbolicTriangle, Hexagon };

struct DualSpec {
    DualForm form = DualForm::Hexagon;
    double h = 0.0;
};

/** @brief dV/dl */
inline double dual_coordinate_density(const DualSpec& s, double l)
{
    const double p = s.form == DualForm::Hexagon ? s.h + 1.0 : -(s.h + 1.0);
    return std::pow(std::tanh(0.5 * l), p);
}

inline double dual_coordinate(const DualSpec& s, double l)
{
    if (!(l > 0.0) || !std::isfinite(l)) {
        throw DomainError("length must be positive and finite");
    }
    if (s.h == -1.0) {
        return l - 1.0;
    }
    const double p = s.form == DualForm::Hexagon ? s.h + 1.0 : -(s.h + 1.0);
    if (const auto F = detail::tanh_power_antiderivative(p, 0.5)) {
        return 2.0 * (*detail::tanh_power_antiderivative(p, 0.5 * l) - *F);
    }
    return detail::integrate_from_one([&](double x) { return dual_coordinate_density(s, x); }, l);
}

inline double dual_length(const DualSpec& s, double v)
{
    if (!std::isfinite(v)) {
        throw DomainError("length coordinate must be finite");
    }
    if (s.h == -1.0) {
        if (!(v + 1.0 > 0.0)) {
            throw DomainError("length coordinate is outside the image of (0, inf)");
        }
        return v + 1.0;
    }
    return quad::invert_increasing(
        [&](double l) { return dual_coordinate(s, l); }, v, 0.0, std::numeric_limits<double>::infinity(), 1.0);
}

inline double dual_curvature_density(const DualSpec& s, double x)
{
    return s.form == DualForm::Hexagon ? std::pow(std::cosh(x), s.h) : std::pow(std::cos(x), s.h);
}

/** @brief int_0^x cos^h or cosh^h */
inline double dual_curvature_integral(const DualSpec& s, double x)
{
    if (s.form == DualForm::HyperbolicTriangle && !(std::abs(x) < kPi / 2)) {
        throw DomainError("half-sum of angles must lie in (-pi/2, pi/2)");
    }
    if (const auto G = detail::cosh_power_integral(s.h, x, s.form == DualForm::Hexagon)) {
        return *G;
    }
    return quad::integrate([&](double t) { return dual_curvature_density(s, t); }, 0.0, x);
}

/** @brief The opposite data of a face: angles of a triangle or arcs of a hexagon */
inline Triple dual_opposite(const DualSpec& s, const Triple& l)
{
    return s.form == DualForm::Hexagon ? hexagon_lengths(l) : angles_from_lengths(Geometry::Hyperbolic, l);
}

/** @brief (b + c - a) / 2 for each side, a the opposite datum */
inline Triple dual_half_sums(const DualSpec& s, const Triple& l) { return detail::half_sums(dual_opposite(s, l)); }

inline Triple dual_gradient_at(const DualSpec& s, const Triple& l)
{
    const Triple r = dual_half_sums(s, l);
    return {dual_curvature_integral(s, r[0]), dual_curvature_integral(s, r[1]), dual_curvature_integral(s, r[2])};
}

/** @brief Hessian in V coordinates at lengths @p l */
inline Matrix3 dual_hessian_at(const DualSpec& s, const Triple& l)
{
    const Triple r = dual_half_sums(s, l);
    const Matrix3 dtheta_dl =
        s.form == DualForm::Hexagon ? hexagon_jacobian(l) : angle_jacobian(Geometry::Hyperbolic, l);
    const Matrix3 dr_dl = detail::half_sum_matrix() * dtheta_dl;
    Matrix3 H;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            H(i, j) = dual_curvature_density(s, r[i]) * dr_dl(i, j) / dual_coordinate_density(s, l[j]);
        }
    }
    return H;
}

/** @brief Energy difference along the straight segment in length space */
inline double dual_segment_energy(const DualSpec& s, const Triple& l_from, const Triple& l_to)
{
    Triple d{l_to[0] - l_from[0], l_to[1] - l_from[1], l_to[2] - l_from[2]};
    auto integrand = [&](double lambda) {
        Triple l{};
        for (int i = 0; i < 3; ++i) {
            l[i] = l_from[i] + lambda * d[i];
        }
        const Triple g = dual_gradient_at(s, l);
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
            acc += g[i] * dual_coordinate_density(s, l[i]) * d[i];
        }
        return acc;
    };
    return quad::integrate(integrand, 0.0, 1.0);
}

}  // namespace vartri
