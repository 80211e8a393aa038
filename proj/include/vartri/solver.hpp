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

// Prescribed-curvature solves. Each one minimizes a convex function Phi
// whose gradient is (curvature - target) up to sign:
//
//   packings  Phi(u) = <c - k*, u> - W(u),  grad Phi = k_h - k*
//   hexagons  Phi(V) = <psi*, V> - W(V),    grad Phi = psi* - psi_h
//
// with W the sum of the per-face energies and c(v) = (4 - deg v) pi / 2.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "vartri/curvature.hpp"
#include "vartri/energy.hpp"
#include "vartri/errors.hpp"
#include "vartri/feasibility.hpp"
#include "vartri/mesh.hpp"

namespace vartri
{

struct SolverConfig {
    int max_iterations = 200;
    double gradient_tolerance = 1e-12;
    /// a converged Newton step must also be this small (max norm, in u)
    double step_tolerance = 1e-7;
    double armijo = 1e-4;
    double backtrack = 0.5;
    int max_backtracks = 60;
    double radius_max = 1e6;
    double radius_min = 1e-8;
    double length_max = 50.0;
    double length_min = 1e-8;
    /// radii or edge lengths to start from; all ones otherwise
    std::optional<std::vector<double>> initial;
};

enum class SolveStatus { Converged, Diverged, MaxIterations, Stalled };

inline std::string to_string(SolveStatus s)
{
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::Diverged: return "diverged";
        case SolveStatus::MaxIterations: return "max-iterations";
        case SolveStatus::Stalled: return "stalled";
    }
    return "";
}

struct SolveReport {
    SolveStatus status = SolveStatus::Stalled;
    int iterations = 0;
    double final_residual = 0.0;
    std::string gauge = "none";
    std::vector<double> values;  ///< radii (packings) or edge lengths (hexagons)
    std::string diagnosis;
    std::vector<double> energy;  ///< Phi after each accepted step, relative to the start

    bool converged() const { return status == SolveStatus::Converged; }
};

/** @brief Target curvatures; per vertex for k, per edge for psi */
struct SolveTarget {
    CurvatureKind kind = CurvatureKind::K;
    double h = 0.0;
    Geometry geometry = Geometry::Hyperbolic;
    std::vector<double> values;
};

// ---------------------------------------------------------------------------
// Damped Newton on a convex function known through its gradient.

struct NewtonProblem {
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;
    /// unit direction along which Phi is flat, if any
    std::function<std::optional<Eigen::VectorXd>(const Eigen::VectorXd&)> gauge;
    /// non-empty message once the iterate has left the trusted region
    std::function<std::string(const Eigen::VectorXd&)> divergence;
};

struct NewtonResult {
    Eigen::VectorXd x;
    SolveStatus status = SolveStatus::Stalled;
    int iterations = 0;
    double residual = 0.0;
    std::string diagnosis;
    std::vector<double> energy;
};

namespace detail
{

/** @brief Phi(x + alpha d) - Phi(x) as the integral of grad Phi along the step */
inline double energy_change(const NewtonProblem& p, const Eigen::VectorXd& x, const Eigen::VectorXd& d, double alpha)
{
    return boost::math::quadrature::gauss<double, 10>::integrate(
        [&](double s) { return p.gradient(x + s * d).dot(d); }, 0.0, alpha);
}

}  // namespace detail

inline NewtonResult newton_minimize(const NewtonProblem& p, Eigen::VectorXd x, const SolverConfig& cfg)
{
    NewtonResult out;
    double phi = 0.0;
    int flat = 0;
    for (int it = 0;; ++it) {
        Eigen::VectorXd g;
        Eigen::MatrixXd H;
        std::optional<Eigen::VectorXd> z;
        try {
            g = p.gradient(x);
            H = p.hessian(x);
            z = p.gauge ? p.gauge(x) : std::nullopt;
        } catch (const DomainError& e) {
            // tiny or huge but finite data can still defeat the trigonometry
            const std::string why = p.divergence ? p.divergence(x) : std::string();
            out.status = why.empty() ? SolveStatus::Stalled : SolveStatus::Diverged;
            out.diagnosis = why.empty() ? std::string("evaluation failed: ") + e.what() : why;
            out.residual = g.size() ? g.lpNorm<Eigen::Infinity>() : std::numeric_limits<double>::quiet_NaN();
            break;
        }
        out.residual = g.lpNorm<Eigen::Infinity>();
        Eigen::VectorXd rhs = -g;
        if (z) {
            H += *z * z->transpose();
            rhs += z->dot(g) * *z;
        }
        Eigen::VectorXd d;
        Eigen::LLT<Eigen::MatrixXd> llt(H);
        if (llt.info() == Eigen::Success) {
            d = llt.solve(rhs);
        }
        if (d.size() == 0 || !d.allFinite() || !(rhs.dot(d) > 0.0)) {
            d = rhs;
        }

        const double step = d.lpNorm<Eigen::Infinity>();
        if (out.residual <= cfg.gradient_tolerance && step <= cfg.step_tolerance) {
            out.status = SolveStatus::Converged;
            break;
        }
        // Gradient at roundoff with a long Newton step: the energy is flat
        // along d, so the infimum sits at infinity in that direction.
        flat = out.residual <= cfg.gradient_tolerance ? flat + 1 : 0;
        if (flat >= 3 && p.divergence) {
            const std::string why = p.divergence(x + (64.0 / step) * d);
            if (!why.empty()) {
                out.status = SolveStatus::Diverged;
                out.diagnosis = "flat energy; " + why;
                break;
            }
        }
        if (it >= cfg.max_iterations) {
            out.status = SolveStatus::MaxIterations;
            out.diagnosis = "no convergence after " + std::to_string(it) + " iterations";
            break;
        }

        const double slope = g.dot(d);
        double alpha = 1.0;
        bool accepted = false;
        double change = 0.0;
        for (int b = 0; b < cfg.max_backtracks; ++b, alpha *= cfg.backtrack) {
            try {
                // the quadrature nodes are interior, so check the endpoint itself
                if (!p.gradient(x + alpha * d).allFinite()) {
                    continue;
                }
                change = detail::energy_change(p, x, d, alpha);
            } catch (const DomainError&) {
                continue;
            }
            if (std::isfinite(change) && change <= cfg.armijo * alpha * slope) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            out.status = out.residual <= cfg.gradient_tolerance ? SolveStatus::Converged : SolveStatus::Stalled;
            if (out.status != SolveStatus::Converged) {
                out.diagnosis = "line search failed at residual " + std::to_string(out.residual);
            }
            break;
        }
        x += alpha * d;
        phi += change;
        out.energy.push_back(phi);
        out.iterations = it + 1;
        if (p.divergence) {
            const std::string why = p.divergence(x);
            if (!why.empty()) {
                out.status = SolveStatus::Diverged;
                out.diagnosis = why;
                out.residual = std::numeric_limits<double>::quiet_NaN();
                try {
                    out.residual = p.gradient(x).lpNorm<Eigen::Infinity>();
                } catch (const DomainError&) {
                }
                break;
            }
        }
    }
    out.x = std::move(x);
    return out;
}

// ---------------------------------------------------------------------------
// Circle packings with prescribed k_h.

namespace detail
{

inline EnergySpec packing_spec(Geometry g, double h) { return EnergySpec::vertex_curvature(g, h); }

inline std::vector<double> radii_of_u(const EnergySpec& s, const Eigen::VectorXd& u)
{
    std::vector<double> r(u.size());
    for (Eigen::Index v = 0; v < u.size(); ++v) {
        r[v] = variable_of_u(s, u[v]);
    }
    return r;
}

inline Eigen::VectorXd u_of_radii(const EnergySpec& s, const std::vector<double>& r)
{
    Eigen::VectorXd u(r.size());
    for (std::size_t v = 0; v < r.size(); ++v) {
        u[v] = u_of_variable(s, r[v]);
    }
    return u;
}

inline Triple corner_radii(const TriangulatedSurface& s, const std::vector<double>& r, int t)
{
    const auto& tri = s.triangle(t);
    return {r[tri[0]], r[tri[1]], r[tri[2]]};
}

inline void check_packing_input(const TriangulatedSurface& s, const std::vector<double>& values, const char* what)
{
    if (static_cast<int>(values.size()) != s.vertex_count()) {
        throw MeshError(std::string("expected ") + std::to_string(s.vertex_count()) + " " + what + ", got " +
                        std::to_string(values.size()));
    }
}

/** @brief k_h from radii through the packing energy's triangle gradients */
inline Eigen::VectorXd packing_curvature(const TriangulatedSurface& s, const EnergySpec& spec, const std::vector<double>& r)
{
    Eigen::VectorXd k(s.vertex_count());
    for (int v = 0; v < s.vertex_count(); ++v) {
        k[v] = (4 - s.degree(v)) * kPi / 2;
    }
    for (int t = 0; t < s.triangle_count(); ++t) {
        const Triple grad = triangle_gradient_at(spec, corner_radii(s, r, t));
        for (int c = 0; c < 3; ++c) {
            k[s.triangle(t)[c]] -= grad[c];
        }
    }
    return k;
}

/** @brief Hessian of W = sum of triangle energies, in u coordinates */
inline Eigen::MatrixXd packing_energy_hessian(const TriangulatedSurface& s,
                                              const EnergySpec& spec,
                                              const std::vector<double>& r)
{
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(s.vertex_count(), s.vertex_count());
    for (int t = 0; t < s.triangle_count(); ++t) {
        const Matrix3 Ht = triangle_hessian_at(spec, corner_radii(s, r, t));
        const auto& tri = s.triangle(t);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                H(tri[i], tri[j]) += Ht(i, j);
            }
        }
    }
    return H;
}

inline Eigen::VectorXd to_vector(const std::vector<double>& x)
{
    return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

}  // namespace detail

/**
 * @brief grad Phi = k_h - target at @p radii, in the u coordinates of the
 * packing energy for (geometry, h).
 */
inline std::vector<double> total_energy_gradient(const TriangulatedSurface& s,
                                                 Geometry g,
                                                 double h,
                                                 const std::vector<double>& radii,
                                                 const std::vector<double>& target)
{
    detail::check_packing_input(s, radii, "radii");
    detail::check_packing_input(s, target, "target values");
    const Eigen::VectorXd k = detail::packing_curvature(s, detail::packing_spec(g, h), radii);
    std::vector<double> out(k.size());
    for (Eigen::Index v = 0; v < k.size(); ++v) {
        out[v] = k[v] - target[v];
    }
    return out;
}

/** @brief Phi at @p radii relative to the packing with all radii 1 */
inline double total_energy(const TriangulatedSurface& s,
                           Geometry g,
                           double h,
                           const std::vector<double>& radii,
                           const std::vector<double>& target)
{
    detail::check_packing_input(s, radii, "radii");
    detail::check_packing_input(s, target, "target values");
    const EnergySpec spec = detail::packing_spec(g, h);
    const std::vector<double> base(radii.size(), 1.0);
    double phi = 0.0;
    for (int v = 0; v < s.vertex_count(); ++v) {
        phi += ((4 - s.degree(v)) * kPi / 2 - target[v]) * (u_of_variable(spec, radii[v]) - u_of_variable(spec, 1.0));
    }
    for (int t = 0; t < s.triangle_count(); ++t) {
        phi -= segment_energy(spec, detail::corner_radii(s, base, t), detail::corner_radii(s, radii, t));
    }
    return phi;
}

/**
 * @brief Radii whose k_h curvature is @p target.
 *
 * At h = 0 targets violating k < 2 pi (and, for E2, the Gauss-Bonnet sum)
 * are rejected up front with InfeasibleError; other infeasible targets
 * show up as a Diverged report. Euclidean radii are normalized to unit
 * product.
 */
inline SolveReport solve_circle_packing(const TriangulatedSurface& s,
                                        Geometry g,
                                        const std::vector<double>& target,
                                        double h,
                                        const SolverConfig& cfg = {})
{
    if (g == Geometry::Spherical) {
        throw DomainError("circle packings are solved in euclidean or hyperbolic geometry only");
    }
    detail::check_packing_input(s, target, "target values");
    if (h == 0.0) {
        for (int v = 0; v < s.vertex_count(); ++v) {
            if (!(target[v] < 2 * kPi)) {
                throw InfeasibleError("target at vertex " + std::to_string(v) + " violates k(v) < 2 pi");
            }
        }
        if (g == Geometry::Euclidean) {
            double sum = 0.0;
            for (double x : target) {
                sum += x;
            }
            if (std::abs(sum - 2 * kPi * s.euler_characteristic()) > 1e-9) {
                throw InfeasibleError("euclidean targets must sum to 2 pi chi");
            }
        }
    }
    const EnergySpec spec = detail::packing_spec(g, h);
    const Eigen::VectorXd kstar = detail::to_vector(target);

    NewtonProblem p;
    p.gradient = [&](const Eigen::VectorXd& u) {
        return Eigen::VectorXd(detail::packing_curvature(s, spec, detail::radii_of_u(spec, u)) - kstar);
    };
    p.hessian = [&](const Eigen::VectorXd& u) {
        return Eigen::MatrixXd(-detail::packing_energy_hessian(s, spec, detail::radii_of_u(spec, u)));
    };
    if (g == Geometry::Euclidean) {
        p.gauge = [&](const Eigen::VectorXd& u) -> std::optional<Eigen::VectorXd> {
            const auto r = detail::radii_of_u(spec, u);
            Eigen::VectorXd z(r.size());
            for (std::size_t v = 0; v < r.size(); ++v) {
                z[v] = g_derivative(spec, r[v]) * r[v];
            }
            return z.normalized();
        };
    }
    p.divergence = [&](const Eigen::VectorXd& u) -> std::string {
        std::vector<double> r;
        try {
            r = detail::radii_of_u(spec, u);
        } catch (const DomainError& e) {
            return std::string("radii left the domain: ") + e.what();
        }
        std::ostringstream os;
        for (std::size_t v = 0; v < r.size(); ++v) {
            if (r[v] > cfg.radius_max) {
                os << (os.tellp() > 0 ? "; " : "") << "radius at vertex " << v
                   << " grows without bound (its angles tend to 0, k -> 2 pi)";
            } else if (r[v] < cfg.radius_min) {
                os << (os.tellp() > 0 ? "; " : "") << "radius at vertex " << v
                   << " shrinks to 0 (its angles tend to pi)";
            }
        }
        return os.str();
    };

    std::vector<double> r0 = cfg.initial.value_or(std::vector<double>(s.vertex_count(), 1.0));
    detail::check_packing_input(s, r0, "initial radii");
    NewtonResult nr = newton_minimize(p, detail::u_of_radii(spec, r0), cfg);

    SolveReport rep;
    rep.status = nr.status;
    rep.iterations = nr.iterations;
    rep.final_residual = nr.residual;
    rep.diagnosis = nr.diagnosis;
    rep.energy = std::move(nr.energy);
    try {
        rep.values = detail::radii_of_u(spec, nr.x);
    } catch (const DomainError&) {
        rep.values.assign(s.vertex_count(), std::numeric_limits<double>::quiet_NaN());
    }
    if (g == Geometry::Euclidean) {
        double log_mean = 0.0;
        for (double r : rep.values) {
            log_mean += std::log(r);
        }
        const double scale = std::exp(-log_mean / rep.values.size());
        for (double& r : rep.values) {
            r *= scale;
        }
        rep.gauge = "product of radii = 1";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Hexagon metrics with prescribed psi_h.

inline SolveReport solve_hexagon_metric(const IdealSurface& is,
                                        const std::vector<double>& target,
                                        double h,
                                        const SolverConfig& cfg = {})
{
    const int n = is.edge_count();
    if (static_cast<int>(target.size()) != n) {
        throw MeshError("expected " + std::to_string(n) + " target values, got " + std::to_string(target.size()));
    }
    for (double x : target) {
        if (!std::isfinite(x)) {
            throw DomainError("target curvatures must be finite");
        }
    }
    const DualSpec spec{DualForm::Hexagon, h};
    const Eigen::VectorXd psistar = detail::to_vector(target);
    const auto& s = is.surface();

    auto lengths_of = [&](const Eigen::VectorXd& V) {
        std::vector<double> l(n);
        for (int e = 0; e < n; ++e) {
            l[e] = dual_length(spec, V[e]);
        }
        return l;
    };
    NewtonProblem p;
    p.gradient = [&](const Eigen::VectorXd& V) {
        const auto psi = hexagon_psi_curvature(is, HexagonMetric{lengths_of(V)}, h);
        return Eigen::VectorXd(psistar - detail::to_vector(psi.values));
    };
    p.hessian = [&](const Eigen::VectorXd& V) {
        const HexagonMetric hm{lengths_of(V)};
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
        for (int t = 0; t < s.triangle_count(); ++t) {
            const Matrix3 Ht = dual_hessian_at(spec, hm.hexagon_lengths_of(is, t));
            const auto e = s.triangle_edges(t);
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    H(e[i], e[j]) -= Ht(i, j);
                }
            }
        }
        return H;
    };
    p.divergence = [&](const Eigen::VectorXd& V) -> std::string {
        std::vector<double> l;
        try {
            l = lengths_of(V);
        } catch (const DomainError& e) {
            return std::string("lengths left the domain: ") + e.what();
        }
        std::ostringstream os;
        for (int e = 0; e < n; ++e) {
            if (l[e] > cfg.length_max) {
                os << (os.tellp() > 0 ? "; " : "") << "edge " << s.edge_label(e)
                   << " grows without bound (an adjacent arc tends to 0)";
            } else if (l[e] < cfg.length_min) {
                os << (os.tellp() > 0 ? "; " : "") << "edge " << s.edge_label(e)
                   << " shrinks to 0 (the facing arcs grow without bound)";
            }
        }
        return os.str();
    };

    std::vector<double> l0 = cfg.initial.value_or(std::vector<double>(n, 1.0));
    if (static_cast<int>(l0.size()) != n) {
        throw MeshError("expected " + std::to_string(n) + " initial lengths");
    }
    Eigen::VectorXd V0(n);
    for (int e = 0; e < n; ++e) {
        V0[e] = dual_coordinate(spec, l0[e]);
    }
    NewtonResult nr = newton_minimize(p, V0, cfg);

    SolveReport rep;
    rep.status = nr.status;
    rep.iterations = nr.iterations;
    rep.final_residual = nr.residual;
    rep.diagnosis = nr.diagnosis;
    rep.energy = std::move(nr.energy);
    try {
        rep.values = lengths_of(nr.x);
    } catch (const DomainError&) {
        rep.values.assign(n, std::numeric_limits<double>::quiet_NaN());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Curvature Jacobians.

/**
 * @brief Hessian of the total energy W of a packing, in the u coordinates
 * of the k_h energy. Equal to -d k_h / d u.
 */
inline Eigen::MatrixXd curvature_jacobian(const TriangulatedSurface& s,
                                          Geometry g,
                                          const CirclePacking& packing,
                                          double h)
{
    detail::check_packing_input(s, packing.radii, "radii");
    return detail::packing_energy_hessian(s, detail::packing_spec(g, h), packing.radii);
}

/**
 * @brief Hessian of the total energy W of a polyhedral metric for the
 * edge curvature @p kind, in that energy's length coordinates.
 *
 * phi (E2, S2): the length family with exponent h; grad W = -phi_h.
 * psi (H2): the dual triangle form; grad W = psi_h.
 */
inline Eigen::MatrixXd curvature_jacobian(const TriangulatedSurface& s,
                                          const PolyhedralMetric& m,
                                          CurvatureKind kind,
                                          double h)
{
    const int n = s.edge_count();
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    std::function<Matrix3(const Triple&)> face;
    if (kind == CurvatureKind::Phi && m.geometry != Geometry::Hyperbolic) {
        const EnergySpec spec = EnergySpec::make(
            m.geometry == Geometry::Euclidean ? Family::EuclideanLength : Family::SphericalLength, h);
        face = [spec](const Triple& l) { return triangle_hessian_at(spec, l); };
    } else if (kind == CurvatureKind::Psi && m.geometry == Geometry::Hyperbolic) {
        const DualSpec spec{DualForm::HyperbolicTriangle, h};
        face = [spec](const Triple& l) { return dual_hessian_at(spec, l); };
    } else {
        throw DomainError("no energy for " + to_string(kind) + " curvature in " + to_string(m.geometry) +
                          " geometry");
    }
    detail::require_interior_edges(s, "edge curvature Jacobian");
    for (int t = 0; t < s.triangle_count(); ++t) {
        const Matrix3 Ht = face(m.triangle_lengths(s, t));
        const auto e = s.triangle_edges(t);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                H(e[i], e[j]) += Ht(i, j);
            }
        }
    }
    return H;
}

/** @brief Hessian of the hexagon energy W in its length coordinates; grad W = psi_h */
inline Eigen::MatrixXd curvature_jacobian(const IdealSurface& is, const HexagonMetric& hm, double h)
{
    const auto& s = is.surface();
    const DualSpec spec{DualForm::Hexagon, h};
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(is.edge_count(), is.edge_count());
    for (int t = 0; t < s.triangle_count(); ++t) {
        const Matrix3 Ht = dual_hessian_at(spec, hm.hexagon_lengths_of(is, t));
        const auto e = s.triangle_edges(t);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                H(e[i], e[j]) += Ht(i, j);
            }
        }
    }
    return H;
}

}  // namespace vartri
