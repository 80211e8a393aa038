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

// Batch property checks over random data: trigonometric laws, closedness
// and convexity of the energies, Gauss-Bonnet. Every sample draws from its
// own generator seeded by (seed, index), so results do not depend on the
// thread count.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "vartri/curvature.hpp"
#include "vartri/energy.hpp"
#include "vartri/kernel.hpp"
#include "vartri/mesh.hpp"

namespace vartri
{

// ---------------------------------------------------------------------------
// Parallel loop.

/** @brief Worker count from VARTRI_THREADS, else the hardware concurrency */
inline unsigned thread_count()
{
    if (const char* env = std::getenv("VARTRI_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return static_cast<unsigned>(n);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/** @brief Calls f(i) for i in [0, n); f must only write to slot i of its outputs */
template <class F>
void parallel_for(std::size_t n, F&& f)
{
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            f(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n && !failed; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    if (!failed.exchange(true)) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

// ---------------------------------------------------------------------------
// Samplers.

namespace sample
{

class Rng
{
public:
    Rng(std::uint64_t seed, std::uint64_t stream)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        gen_.seed(seq);
    }
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

/** @brief Angles of a Euclidean triangle, each at least 0.15 */
inline Triple euclidean_angles(Rng& rng)
{
    for (;;) {
        const double a = rng.uniform(0.15, kPi - 0.3);
        const double b = rng.uniform(0.15, kPi - 0.3);
        const double c = kPi - a - b;
        if (c >= 0.15) {
            return {a, b, c};
        }
    }
}

inline Triple euclidean_lengths(Rng& rng)
{
    const Triple a = euclidean_angles(rng);
    const double scale = rng.uniform(0.5, 2.0);
    return {scale * std::sin(a[0]), scale * std::sin(a[1]), scale * std::sin(a[2])};
}

/** @brief Angles of a hyperbolic triangle, each in (0.1, 1) with sum below pi - 0.05 */
inline Triple hyperbolic_angles(Rng& rng)
{
    for (;;) {
        const Triple a{rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0)};
        if (a[0] + a[1] + a[2] < kPi - 0.05) {
            return a;
        }
    }
}

inline Triple hyperbolic_lengths(Rng& rng) { return lengths_from_angles(Geometry::Hyperbolic, hyperbolic_angles(rng)); }

/** @brief Side lengths of the triangle spanned by three random unit vectors, angles in (0.1, pi - 0.1) */
inline Triple spherical_lengths(Rng& rng)
{
    std::normal_distribution<double> n01;
    for (;;) {
        std::array<Eigen::Vector3d, 3> p;
        for (auto& x : p) {
            x = Eigen::Vector3d(n01(rng.engine()), n01(rng.engine()), n01(rng.engine())).normalized();
        }
        Triple l{};
        for (int i = 0; i < 3; ++i) {
            l[i] = std::acos(std::clamp(p[(i + 1) % 3].dot(p[(i + 2) % 3]), -1.0, 1.0));
        }
        if (*std::min_element(l.begin(), l.end()) < 0.1 || *std::max_element(l.begin(), l.end()) > kPi - 0.1 ||
            l[0] + l[1] + l[2] > 2 * kPi - 0.2) {
            continue;
        }
        try {
            const Triple a = angles_from_lengths(Geometry::Spherical, l);
            if (*std::min_element(a.begin(), a.end()) > 0.1 && *std::max_element(a.begin(), a.end()) < kPi - 0.1) {
                return l;
            }
        } catch (const DomainError&) {
        }
    }
}

inline Triple lengths(Geometry g, Rng& rng)
{
    switch (g) {
        case Geometry::Euclidean: return euclidean_lengths(rng);
        case Geometry::Hyperbolic: return hyperbolic_lengths(rng);
        case Geometry::Spherical: return spherical_lengths(rng);
    }
    return {};
}

/** @brief Arcs opposite the alternate sides of a right-angled hexagon */
inline Triple hexagon_arcs(Rng& rng) { return {rng.uniform(0.2, 2.5), rng.uniform(0.2, 2.5), rng.uniform(0.2, 2.5)}; }

inline Triple radii(Rng& rng, double lo = 0.2, double hi = 3.0)
{
    return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

/** @brief A point in the variable domain of @p f */
inline Triple family_point(Family f, Rng& rng)
{
    switch (f) {
        case Family::EuclideanLength: return euclidean_lengths(rng);
        case Family::SphericalLength: return spherical_lengths(rng);
        case Family::EuclideanPacking:
        case Family::HyperbolicPacking: return radii(rng);
        case Family::HyperbolicAnglePacking: return detail::half_sums(hyperbolic_angles(rng));
        case Family::Hexagon: return detail::half_sums(hexagon_arcs(rng));
    }
    return {};
}

/**
 * @brief Random metric on @p s: a packing metric with every length scaled
 * by a factor in [1 - jitter, 1 + jitter], resampled until valid.
 */
inline PolyhedralMetric metric(const TriangulatedSurface& s, Geometry g, Rng& rng, double jitter = 0.1)
{
    const double lo = g == Geometry::Spherical ? 0.15 : 0.2;
    const double hi = g == Geometry::Spherical ? 0.6 : 2.0;
    for (;;) {
        std::vector<double> l(s.edge_count());
        std::vector<double> r(s.vertex_count());
        for (double& x : r) {
            x = rng.uniform(lo, hi);
        }
        for (int e = 0; e < s.edge_count(); ++e) {
            l[e] = (r[s.edge(e).v0] + r[s.edge(e).v1]) * rng.uniform(1.0 - jitter, 1.0 + jitter);
        }
        try {
            PolyhedralMetric m = PolyhedralMetric::make(s, g, std::move(l));
            bool fine = true;
            for (const Triple& a : corner_angles(s, m)) {
                fine = fine && *std::min_element(a.begin(), a.end()) > 0.05;
            }
            if (fine) {
                return m;
            }
        } catch (const DomainError&) {
        }
    }
}

}  // namespace sample

// ---------------------------------------------------------------------------
// Suites.

struct Check {
    std::string name;
    double value = 0.0;       ///< worst observed quantity
    double tolerance = 0.0;   ///< bound the quantity is compared with
    bool passed = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }
};

struct SuiteOptions {
    std::uint64_t seed = 0;
    std::size_t triangles = 10000;   ///< laws: per geometry
    std::size_t hexagons = 1000;     ///< laws
    std::size_t points = 100;        ///< closedness: per family and h
    std::size_t hessians = 1000;     ///< convexity: per family and h
    std::size_t metrics = 200;       ///< gaussbonnet: per geometry and mesh
    std::vector<double> h_grid{-2, -1, 0, 1, 2};
};

namespace detail
{

inline double max_of(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) {
        m = std::isnan(x) || std::isnan(m) ? std::numeric_limits<double>::quiet_NaN() : std::max(m, x);
    }
    return m;
}

inline std::string h_label(double h)
{
    std::ostringstream os;
    os << "h=" << h;
    return os.str();
}

inline Check upper_check(std::string name, double value, double tol, std::string detail = {})
{
    return {std::move(name), value, tol, value < tol, std::move(detail)};
}

}  // namespace detail

/** @brief Sine, tangent and A^2 identities on random triangles and hexagons */
inline SuiteReport verify_laws(const SuiteOptions& opt = {})
{
    constexpr double tol = 1e-12;
    SuiteReport rep{"laws", {}};
    const std::array<Geometry, 3> geoms{Geometry::Euclidean, Geometry::Hyperbolic, Geometry::Spherical};
    for (std::size_t gi = 0; gi < geoms.size(); ++gi) {
        const Geometry g = geoms[gi];
        std::vector<double> sine(opt.triangles), tangent(opt.triangles);
        parallel_for(opt.triangles, [&](std::size_t i) {
            sample::Rng rng(opt.seed, gi << 40 | i);
            const auto r = sine_tangent_laws(TriangleData::from_lengths(g, sample::lengths(g, rng)));
            sine[i] = r.sine;
            tangent[i] = r.tangent;
        });
        rep.checks.push_back(detail::upper_check("sine law " + to_string(g), detail::max_of(sine), tol));
        rep.checks.push_back(detail::upper_check("tangent law " + to_string(g), detail::max_of(tangent), tol));
    }
    {
        std::vector<double> a2(opt.triangles);
        parallel_for(opt.triangles, [&](std::size_t i) {
            sample::Rng rng(opt.seed, std::uint64_t{7} << 40 | i);
            a2[i] = area_quantity(angles_from_lengths(Geometry::Spherical, sample::spherical_lengths(rng))).residual;
        });
        rep.checks.push_back(detail::upper_check("A^2 identity spherical", detail::max_of(a2), tol));
    }
    std::vector<double> sine(opt.hexagons), tangent(opt.hexagons);
    parallel_for(opt.hexagons, [&](std::size_t i) {
        sample::Rng rng(opt.seed, std::uint64_t{9} << 40 | i);
        const auto r = sine_tangent_laws(HexagonData::from_opposite(sample::hexagon_arcs(rng)));
        sine[i] = r.sine;
        tangent[i] = r.tangent;
    });
    rep.checks.push_back(detail::upper_check("sine law hexagon", detail::max_of(sine), tol));
    rep.checks.push_back(detail::upper_check("tangent law hexagon", detail::max_of(tangent), tol));
    return rep;
}

/**
 * @brief Mixed partials and two-path energies for every family and h, plus
 * the non-closed control form f(t) = t^2 on Euclidean lengths.
 */
inline SuiteReport verify_closedness(const SuiteOptions& opt = {})
{
    constexpr double mixed_tol = 1e-7;
    constexpr double path_tol = 1e-8;
    SuiteReport rep{"closedness", {}};
    for (std::size_t fi = 0; fi < kAllFamilies.size(); ++fi) {
        for (std::size_t hi = 0; hi < opt.h_grid.size(); ++hi) {
            const EnergySpec s = EnergySpec::make(kAllFamilies[fi], opt.h_grid[hi]);
            std::vector<double> mixed(opt.points), path(opt.points);
            parallel_for(opt.points, [&](std::size_t i) {
                sample::Rng rng(opt.seed, (fi * 16 + hi) << 40 | i);
                const Triple a = sample::family_point(s.family, rng);
                const Triple b = sample::family_point(s.family, rng);
                // detour through the midpoint pushed toward a third point
                const Triple c = sample::family_point(s.family, rng);
                Triple m{};
                for (int k = 0; k < 3; ++k) {
                    m[k] = 0.5 * (0.5 * (a[k] + b[k]) + c[k]);
                }
                mixed[i] = closedness_residual(s, u_of_variables(s, a));
                const double direct = segment_energy(s, a, b);
                const std::array<Triple, 3> detour{a, m, b};
                path[i] = std::abs(direct - path_energy(s, detour));
            });
            const std::string tag = to_string(s.family) + " " + detail::h_label(s.h);
            rep.checks.push_back(detail::upper_check("mixed partials " + tag, detail::max_of(mixed), mixed_tol));
            rep.checks.push_back(detail::upper_check("two-path energy " + tag, detail::max_of(path), path_tol));
        }
    }
    // Control: replacing int sin^h by t^2 breaks closedness.
    const EnergySpec s = EnergySpec::make(Family::EuclideanLength, 0.0);
    std::vector<double> control(opt.points);
    parallel_for(opt.points, [&](std::size_t i) {
        sample::Rng rng(opt.seed, std::uint64_t{99} << 40 | i);
        const Triple l = sample::euclidean_lengths(rng);
        control[i] = closedness_residual_of(
            s,
            [](const Triple& t) {
                const Triple a = angles_from_lengths(Geometry::Euclidean, t);
                return Triple{a[0] * a[0], a[1] * a[1], a[2] * a[2]};
            },
            l);
    });
    const double weakest = *std::min_element(control.begin(), control.end());
    rep.checks.push_back({"perturbed form f(t)=t^2 stays non-closed", weakest, 1e3 * mixed_tol,
                          weakest >= 1e3 * mixed_tol, "smallest residual over the samples"});
    return rep;
}

/** @brief Convex (true) or concave as the families are stated: (i), (ii), (v) convex */
inline bool stated_convex(Family f)
{
    return f == Family::EuclideanLength || f == Family::SphericalLength || f == Family::HyperbolicAnglePacking;
}

struct DefinitenessSample {
    bool sign_matches_stated = false;
    bool sign_matches_observed = false;  ///< against EnergySpec::convex()
    bool kernel_is_diagonal = true;      ///< semidefinite only: kernel within 1e-6 of (1,1,1)/sqrt 3
    bool kernel_is_scaling = true;       ///< semidefinite only: kernel within 1e-6 of scaling_direction
    double asymmetry = 0.0;
};

/**
 * @brief Classifies one Hessian. Strict families need every eigenvalue of
 * the right sign; semidefinite ones one eigenvalue of magnitude <= 1e-9
 * and the other two of the right sign.
 */
inline DefinitenessSample classify_hessian(const EnergySpec& s, const Triple& t)
{
    const Matrix3 H = triangle_hessian_at(s, t);
    DefinitenessSample out;
    out.asymmetry = (H - H.transpose()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Matrix3> es(0.5 * (H + H.transpose()));
    const Eigen::Vector3d lam = es.eigenvalues();
    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    auto signs_ok = [&](bool convex) {
        int zero = -1;
        if (s.semidefinite()) {
            lam.cwiseAbs().minCoeff(&zero);
            if (std::abs(lam[zero]) > 1e-9) {
                return false;
            }
        }
        for (int i = 0; i < 3; ++i) {
            if (i == zero) {
                continue;
            }
            const double v = convex ? lam[i] : -lam[i];
            if (!(v > 1e-10 * scale)) {
                return false;
            }
        }
        return true;
    };
    out.sign_matches_stated = signs_ok(stated_convex(s.family));
    out.sign_matches_observed = signs_ok(s.convex());
    if (s.semidefinite()) {
        int zero = 0;
        lam.cwiseAbs().minCoeff(&zero);
        const Eigen::Vector3d v = es.eigenvectors().col(zero);
        auto near = [&](const Eigen::Vector3d& e) { return std::min((v - e).norm(), (v + e).norm()) <= 1e-6; };
        out.kernel_is_diagonal = near(Eigen::Vector3d::Ones().normalized());
        out.kernel_is_scaling = near(scaling_direction(s, t));
    }
    return out;
}

/**
 * @brief Hessian signs for every family and h against the stated signs;
 * the Euclidean kernels are compared with (1,1,1)/sqrt 3.
 */
inline SuiteReport verify_convexity(const SuiteOptions& opt = {})
{
    SuiteReport rep{"convexity", {}};
    for (std::size_t fi = 0; fi < kAllFamilies.size(); ++fi) {
        for (std::size_t hi = 0; hi < opt.h_grid.size(); ++hi) {
            const EnergySpec s = EnergySpec::make(kAllFamilies[fi], opt.h_grid[hi]);
            std::vector<DefinitenessSample> res(opt.hessians);
            parallel_for(opt.hessians, [&](std::size_t i) {
                sample::Rng rng(opt.seed, (fi * 16 + hi) << 40 | i);
                res[i] = classify_hessian(s, sample::family_point(s.family, rng));
            });
            std::size_t stated = 0, observed = 0, diag = 0, scaling = 0;
            double asym = 0.0;
            for (const auto& r : res) {
                stated += r.sign_matches_stated;
                observed += r.sign_matches_observed;
                diag += r.kernel_is_diagonal;
                scaling += r.kernel_is_scaling;
                asym = std::max(asym, r.asymmetry);
            }
            const std::string tag = to_string(s.family) + " " + detail::h_label(s.h);
            const std::string want = std::string(stated_convex(s.family) ? "convex" : "concave") +
                                     (s.semidefinite() ? " with 1-dim kernel" : "");
            const double n = static_cast<double>(opt.hessians);
            std::ostringstream os;
            os << stated << "/" << opt.hessians << " samples " << want << "; " << observed << "/" << opt.hessians
               << " " << (s.convex() ? "convex" : "concave");
            rep.checks.push_back({"stated sign " + tag, stated / n, 1.0, stated == opt.hessians, os.str()});
            if (s.semidefinite()) {
                std::ostringstream ks;
                ks << diag << "/" << opt.hessians << " kernels near (1,1,1)/sqrt3; " << scaling << "/"
                   << opt.hessians << " near the scaling direction";
                rep.checks.push_back({"kernel (1,1,1) " + tag, diag / n, 1.0, diag == opt.hessians, ks.str()});
            }
            rep.checks.push_back(detail::upper_check("asymmetry " + tag, asym, 1e-10));
        }
    }
    return rep;
}

/** @brief Sum of k_0 against 2 pi chi and the total area in all geometries */
inline SuiteReport verify_gauss_bonnet(const SuiteOptions& opt = {})
{
    constexpr double tol = 1e-9;
    SuiteReport rep{"gaussbonnet", {}};
    const std::array<TriangulatedSurface, 2> meshes{tetrahedron(), octahedron()};
    const std::array<const char*, 2> names{"tetrahedron", "octahedron"};
    const std::array<Geometry, 3> geoms{Geometry::Euclidean, Geometry::Hyperbolic, Geometry::Spherical};
    for (std::size_t mi = 0; mi < meshes.size(); ++mi) {
        for (std::size_t gi = 0; gi < geoms.size(); ++gi) {
            const auto& s = meshes[mi];
            const Geometry g = geoms[gi];
            std::vector<double> res(opt.metrics);
            parallel_for(opt.metrics, [&](std::size_t i) {
                sample::Rng rng(opt.seed, (mi * 4 + gi) << 40 | i);
                const PolyhedralMetric m = sample::metric(s, g, rng);
                double sum = 0.0;
                for (double k : k0_curvature(s, m).values) {
                    sum += k;
                }
                const double area = total_area(s, m);
                const double expected = 2 * kPi * s.euler_characteristic() +
                                        (g == Geometry::Hyperbolic ? area : g == Geometry::Spherical ? -area : 0.0);
                res[i] = std::abs(sum - expected);
            });
            rep.checks.push_back(detail::upper_check(
                std::string("gauss-bonnet ") + names[mi] + " " + to_string(g), detail::max_of(res), tol));
        }
    }
    return rep;
}

inline SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {})
{
    if (name == "laws") {
        return verify_laws(opt);
    }
    if (name == "closedness") {
        return verify_closedness(opt);
    }
    if (name == "convexity") {
        return verify_convexity(opt);
    }
    if (name == "gaussbonnet") {
        return verify_gauss_bonnet(opt);
    }
    throw std::invalid_argument("unknown suite \"" + name + "\"; expected laws, closedness, convexity or gaussbonnet");
}

}  // namespace vartri
