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
#include <limits>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "vartri/errors.hpp"

namespace vartri::quad
{

/** @brief Relative tolerance handed to the adaptive rules */
inline constexpr double kTolerance = 1e-13;

/**
 * @brief Adaptive Gauss-Kronrod integral of @p f over [a, b] (either order).
 *
 * The integrand must be smooth on the closed interval.
 */
template <class F>
double integrate(F&& f, double a, double b)
{
    if (a == b) {
        return 0.0;
    }
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, std::min(a, b), std::max(a, b), 12, kTolerance, &err);
    return a < b ? v : -v;
}

/**
 * @brief Integral of @p f over [a, b] where f may have an integrable
 * singularity at @p a.
 */
template <class F>
double integrate_singular_start(F&& f, double a, double b)
{
    if (a == b) {
        return 0.0;
    }
    thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
    if (a < b) {
        return rule.integrate(f, a, b, kTolerance);
    }
    // Reflect so the singular endpoint stays on the left.
    return -rule.integrate([&](double s) { return f(a - s); }, 0.0, a - b, kTolerance);
}

/**
 * @brief Inverse of a strictly increasing function on the open interval (lo, hi).
 *
 * The bracket grows from @p start toward the interval ends; throws
 * DomainError when @p target is not attained.
 */
template <class F>
double invert_increasing(F&& f, double target, double lo, double hi, double start)
{
    auto g = [&](double x) { return f(x) - target; };
    const double g0 = g(start);
    if (g0 == 0.0) {
        return start;
    }
    const bool upward = g0 < 0;
    const double bound = upward ? hi : lo;
    // Unbounded sides double outward; bounded sides are approached geometrically.
    auto probe = [&](int k) {
        if (std::isinf(bound)) {
            const double d = std::ldexp(1.0, k - 1);
            return upward ? start + d : start - d;
        }
        return bound + (start - bound) * std::ldexp(1.0, -k);
    };
    double inner = start, g_inner = g0;
    double outer = start, g_outer = g0;
    bool found = false;
    for (int k = 1; k < 1100; ++k) {
        const double x = probe(k);
        if (!std::isfinite(x) || x == bound || x == inner) {
            break;
        }
        double gx = 0.0;
        try {
            gx = g(x);
        } catch (const DomainError&) {
            break;
        }
        if (!std::isfinite(gx)) {
            break;
        }
        if (gx == 0.0) {
            return x;
        }
        if ((gx > 0) == upward) {
            outer = x;
            g_outer = gx;
            found = true;
            break;
        }
        inner = x;
        g_inner = gx;
    }
    if (!found) {
        throw DomainError("value " + std::to_string(target) + " is outside the image of the coordinate map");
    }
    if (g_outer == 0.0) {
        return outer;
    }
    double a = upward ? inner : outer, b = upward ? outer : inner;
    double ga = upward ? g_inner : g_outer, gb = upward ? g_outer : g_inner;
    std::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3);
    auto [r0, r1] = boost::math::tools::toms748_solve(g, a, b, ga, gb, tol, iters);
    return 0.5 * (r0 + r1);
}

}  // namespace vartri::quad
