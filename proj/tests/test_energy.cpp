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
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "vartri/energy.hpp"
#include "vartri/verify.hpp"

using namespace vartri;

namespace
{

constexpr double pi = kPi;
const std::array<double, 5> kGrid{-2, -1, 0, 1, 2};

// Composite Simpson, kept separate from the library quadrature.
template <class F>
double simpson(F&& f, double a, double b, int n = 20000)
{
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

Triple point(Family f, std::uint64_t stream)
{
    sample::Rng rng(42, stream);
    return sample::family_point(f, rng);
}

Matrix3 fd_hessian(const EnergySpec& s, const Triple& u, double step = 1e-6)
{
    Matrix3 H;
    for (int j = 0; j < 3; ++j) {
        Triple p = u, m = u;
        p[j] += step;
        m[j] -= step;
        const Triple gp = triangle_gradient(s, p), gm = triangle_gradient(s, m);
        for (int i = 0; i < 3; ++i) {
            H(i, j) = (gp[i] - gm[i]) / (2 * step);
        }
    }
    return H;
}

}  // namespace

TEST(UCoordinate, ClosedForms)
{
    const auto i0 = EnergySpec::make(Family::EuclideanLength, 0);
    EXPECT_NEAR(u_of_variable(i0, 1.0), 0.0, 1e-15);
    EXPECT_NEAR(u_of_variable(i0, 2.5), std::log(2.5), 1e-15);

    const auto iv = EnergySpec::make(Family::HyperbolicPacking, -1);
    EXPECT_NEAR(u_of_variable(iv, 3.2), 2.2, 1e-14);

    const auto ii = EnergySpec::make(Family::SphericalLength, -1);
    EXPECT_NEAR(u_of_variable(ii, 1.0), 1.0 - pi / 2, 1e-14);

    const auto iii = EnergySpec::make(Family::EuclideanPacking, 1);
    for (double r : {0.2, 1.0, 4.0}) {
        EXPECT_NEAR(u_of_variable(iii, r), 1.0 - 1.0 / r, 1e-14);
    }
}

TEST(UCoordinate, MatchesIndependentQuadrature)
{
    for (Family f : kAllFamilies) {
        for (double h : kGrid) {
            const auto s = EnergySpec::make(f, h);
            for (std::uint64_t k = 0; k < 5; ++k) {
                const double t = point(f, k)[0];
                const double want = simpson([&](double x) { return g_derivative(s, x); }, s.g_base, t);
                EXPECT_NEAR(u_of_variable(s, t), want, 1e-10 * std::max(1.0, std::abs(want)))
                    << to_string(f) << " h=" << h << " t=" << t;
            }
        }
    }
}

TEST(UCoordinate, InverseRoundTrip)
{
    for (Family f : kAllFamilies) {
        for (double h : kGrid) {
            const auto s = EnergySpec::make(f, h);
            for (std::uint64_t k = 0; k < 20; ++k) {
                for (double t : point(f, k)) {
                    EXPECT_NEAR(variable_of_u(s, u_of_variable(s, t)), t, 1e-10 * std::max(1.0, std::abs(t)))
                        << to_string(f) << " h=" << h;
                }
            }
        }
    }
}

TEST(UCoordinate, StrictlyIncreasing)
{
    for (Family f : kAllFamilies) {
        const auto s = EnergySpec::make(f, 0.5);
        const Interval d = s.variable_domain();
        const double lo = std::isinf(d.lo) ? -3.0 : d.lo + 0.05, hi = std::isinf(d.hi) ? 3.0 : d.hi - 0.05;
        double prev = -std::numeric_limits<double>::infinity();
        for (double t = lo; t <= hi; t += (hi - lo) / 40) {
            const double u = u_of_variable(s, t);
            EXPECT_GT(u, prev) << to_string(f);
            prev = u;
        }
    }
}

TEST(UCoordinate, OutsideDomain)
{
    EXPECT_THROW(u_of_variable(EnergySpec::make(Family::SphericalLength, 0), pi), DomainError);
    EXPECT_THROW(u_of_variable(EnergySpec::make(Family::EuclideanLength, 0), -1.0), DomainError);
    // (iii) with h = 1 maps (0, inf) onto (-inf, 1)
    EXPECT_THROW(variable_of_u(EnergySpec::make(Family::EuclideanPacking, 1), 1.5), DomainError);
    EXPECT_THROW(variable_of_u(EnergySpec::make(Family::HyperbolicPacking, 0), 5.0), DomainError);
}

TEST(Antiderivatives, AgainstSimpson)
{
    for (int p = -3; p <= 3; ++p) {
        for (auto [a, b] : {std::pair{0.05, 0.9}, std::pair{0.7, 4.0}}) {
            const double want = simpson([&](double x) { return std::pow(std::tanh(x), p); }, a, b);
            const double got =
                *detail::tanh_power_antiderivative(p, b) - *detail::tanh_power_antiderivative(p, a);
            EXPECT_NEAR(got, want, 1e-9 * std::max(1.0, std::abs(want))) << "tanh^" << p;
            if (p <= 1) {
                const double ws = simpson([&](double x) { return std::pow(std::sinh(x), p); }, a, b);
                const double gs =
                    *detail::sinh_power_antiderivative(p, b) - *detail::sinh_power_antiderivative(p, a);
                EXPECT_NEAR(gs, ws, 1e-9 * std::max(1.0, std::abs(ws))) << "sinh^" << p;
            }
        }
        if (p >= -2 && p <= 2) {
            for (bool hyp : {true, false}) {
                const double x = 1.2;
                const double want = simpson(
                    [&](double t) { return std::pow(hyp ? std::cosh(t) : std::cos(t), p); }, 0.0, x);
                EXPECT_NEAR(*detail::cosh_power_integral(p, x, hyp), want, 1e-10);
            }
        }
    }
    EXPECT_FALSE(detail::tanh_power_antiderivative(0.5, 1.0));
    EXPECT_FALSE(detail::sinh_power_antiderivative(2, 1.0));
}

TEST(FValue, SineFamilyClosedForms)
{
    const auto s0 = EnergySpec::make(Family::EuclideanLength, 0);
    EXPECT_NEAR(f_value(s0, pi / 3), -pi / 6, 1e-14);
    const auto s2 = EnergySpec::make(Family::EuclideanLength, -2);
    for (double t : {0.3, 1.0, 2.0, 2.9}) {
        EXPECT_NEAR(f_value(s2, t), -1.0 / std::tan(t), 1e-10);
    }
}

TEST(FValue, HalfAngleFamilyBaseZero)
{
    const auto s = EnergySpec::make(Family::EuclideanPacking, 0);
    EXPECT_EQ(s.f_base, 0.0);
    EXPECT_NEAR(f_value(s, 1.1), 1.1, 1e-14);
    // cot^{1/2}(t/2) is integrable at 0
    const auto h = EnergySpec::make(Family::EuclideanPacking, 0.5);
    EXPECT_FALSE(h.f_base_moved);
    // substitute t = x^2 to remove the endpoint singularity
    const double want = simpson(
        [](double x) { return x == 0.0 ? 2 * std::sqrt(2.0) : 2 * x * std::pow(std::tan(0.5 * x * x), -0.5); }, 0.0,
        1.0);
    EXPECT_NEAR(f_value(h, 1.0), want, 1e-9);
}

TEST(FValue, BaseMovedWhenNotIntegrable)
{
    const auto s = EnergySpec::make(Family::EuclideanPacking, 2);
    EXPECT_TRUE(s.f_base_moved);
    EXPECT_EQ(s.f_base, pi / 2);
    EXPECT_NEAR(f_value(s, pi / 2), 0.0, 1e-15);
}

TEST(FValue, StrictlyIncreasing)
{
    for (Family f : kAllFamilies) {
        for (double h : kGrid) {
            const auto s = EnergySpec::make(f, h);
            const double lo = 0.2, hi = s.output_is_angle() ? pi - 0.2 : 4.0;
            double prev = -std::numeric_limits<double>::infinity();
            for (double y = lo; y <= hi; y += (hi - lo) / 20) {
                const double v = f_value(s, y);
                EXPECT_GT(v, prev);
                prev = v;
            }
        }
    }
    EXPECT_THROW(f_value(EnergySpec::make(Family::EuclideanLength, 0), pi + 0.1), DomainError);
}

TEST(Gradient, EquilateralAngles)
{
    const auto s = EnergySpec::make(Family::EuclideanLength, 0).with_f_base(0.0);
    for (double g : triangle_gradient(s, {0, 0, 0})) {
        EXPECT_NEAR(g, pi / 3, 1e-14);
    }
}

TEST(Gradient, SymmetricPackingEqualEntries)
{
    for (double h : kGrid) {
        const auto s = EnergySpec::make(Family::EuclideanPacking, h);
        const double u = u_of_variable(s, 0.7);
        const Triple g = triangle_gradient(s, {u, u, u});
        EXPECT_NEAR(g[0], g[1], 1e-13);
        EXPECT_NEAR(g[1], g[2], 1e-13);
    }
}

TEST(Gradient, MatchesEnergyDifferences)
{
    for (Family f : kAllFamilies) {
        for (double h : kGrid) {
            const auto s = EnergySpec::make(f, h);
            const Triple u = u_of_variables(s, point(f, 3));
            const Triple g = triangle_gradient(s, u);
            for (int j = 0; j < 3; ++j) {
                const double step = 1e-5;
                auto at = [&](double d) {
                    Triple p = u;
                    p[j] += d;
                    return triangle_energy(s, p, u);
                };
                const double fd = (at(-2 * step) - 8 * at(-step) + 8 * at(step) - at(2 * step)) / (12 * step);
                EXPECT_NEAR(fd, g[j], 1e-6 * std::max(1.0, std::abs(g[j]))) << to_string(f) << " h=" << h;
            }
        }
    }
}

TEST(Hessian, EuclideanEquilateralKernel)
{
    const auto s = EnergySpec::make(Family::EuclideanLength, 0);
    const Matrix3 H = triangle_hessian(s, {0, 0, 0});
    Eigen::SelfAdjointEigenSolver<Matrix3> es(H);
    const auto lam = es.eigenvalues();
    EXPECT_NEAR(lam[0], 0.0, 1e-12);
    EXPECT_GT(lam[1], 0.1);
    EXPECT_NEAR(lam[1], lam[2], 1e-12);
    const Eigen::Vector3d v = es.eigenvectors().col(0);
    EXPECT_NEAR(std::abs(v.dot(Eigen::Vector3d::Ones().normalized())), 1.0, 1e-12);
}

TEST(Hessian, HyperbolicPackingNegativeDefinite)
{
    const auto s = EnergySpec::make(Family::HyperbolicPacking, 0);
    for (double r : {0.1, 1.0, 5.0}) {
        const double u = u_of_variable(s, r);
        Eigen::SelfAdjointEigenSolver<Matrix3> es(triangle_hessian(s, {u, u, u}));
        EXPECT_LT(es.eigenvalues().maxCoeff(), 0.0);
    }
}

TEST(Hessian, SymmetricAndMatchesGradientJacobian)
{
    for (Family f : kAllFamilies) {
        for (double h : kGrid) {
            const auto s = EnergySpec::make(f, h);
            for (std::uint64_t k = 0; k < 5; ++k) {
                const Triple u = u_of_variables(s, point(f, 100 + k));
                const Matrix3 H = triangle_hessian(s, u);
                const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
                EXPECT_LT((H - H.transpose()).cwiseAbs().maxCoeff(), 1e-10 * scale) << to_string(f) << " h=" << h;
                EXPECT_LT((H - fd_hessian(s, u)).cwiseAbs().maxCoeff(), 1e-5 * scale) << to_string(f) << " h=" << h;
            }
        }
    }
}

TEST(Hessian, SignsPerFamily)
{
    // observed signs: (i), (ii) convex; (iii)-(vi) concave; (i), (iii) with one flat direction
    for (Family f : kAllFamilies) {
        for (double h : kGrid) {
            const auto s = EnergySpec::make(f, h);
            for (std::uint64_t k = 0; k < 50; ++k) {
                const auto d = classify_hessian(s, point(f, 200 + k));
                EXPECT_TRUE(d.sign_matches_observed) << to_string(f) << " h=" << h;
            }
        }
    }
    EXPECT_TRUE(EnergySpec::make(Family::EuclideanLength, 0).convex());
    EXPECT_TRUE(EnergySpec::make(Family::SphericalLength, 0).convex());
    EXPECT_FALSE(EnergySpec::make(Family::HyperbolicAnglePacking, 0).convex());
}

TEST(Hessian, AnglePackingIsConcave)
{
    // raising r_j + r_k shrinks every side of a hyperbolic triangle, so the form decreases
    const auto s = EnergySpec::make(Family::HyperbolicAnglePacking, 0);
    const Triple r{0.3, 0.4, 0.5};
    Eigen::SelfAdjointEigenSolver<Matrix3> es(triangle_hessian_at(s, r));
    EXPECT_LT(es.eigenvalues().maxCoeff(), 0.0);
    const Triple l0 = output_of_variables(s, r);
    const Triple l1 = output_of_variables(s, {0.31, 0.41, 0.51});
    for (int i = 0; i < 3; ++i) {
        EXPECT_LT(l1[i], l0[i]);
    }
}

TEST(Hessian, SignCongruentAcrossH)
{
    for (Family f : kAllFamilies) {
        for (std::uint64_t k = 0; k < 20; ++k) {
            const Triple t = point(f, 300 + k);
            bool first = true, sign = false;
            for (double h : kGrid) {
                const auto s = EnergySpec::make(f, h);
                const Matrix3 H = triangle_hessian_at(s, t);
                Eigen::SelfAdjointEigenSolver<Matrix3> es(0.5 * (H + H.transpose()));
                const double big = es.eigenvalues().cwiseAbs().maxCoeff();
                const bool positive = es.eigenvalues().maxCoeff() > 1e-9 * big;
                if (first) {
                    sign = positive;
                    first = false;
                }
                EXPECT_EQ(positive, sign) << to_string(f) << " h=" << h;
            }
        }
    }
}

TEST(Hessian, EuclideanKernelIsScalingDirection)
{
    // in u coordinates the flat direction is (t_i^{-h}), equal to (1,1,1) only at h = 0
    for (Family f : {Family::EuclideanLength, Family::EuclideanPacking}) {
        for (double h : kGrid) {
            const auto s = EnergySpec::make(f, h);
            const Triple t = point(f, 400);
            const Eigen::Vector3d z = Eigen::Vector3d(std::pow(t[0], -h), std::pow(t[1], -h), std::pow(t[2], -h));
            const Matrix3 H = triangle_hessian_at(s, t);
            EXPECT_LT((H * z).norm(), 1e-10 * H.norm() * z.norm()) << to_string(f) << " h=" << h;
            const auto d = classify_hessian(s, t);
            EXPECT_TRUE(d.kernel_is_scaling);
            EXPECT_EQ(d.kernel_is_diagonal, h == 0.0);
        }
    }
}

TEST(Energy, ZeroAtBase)
{
    const auto s = EnergySpec::make(Family::HyperbolicPacking, 1);
    const Triple u{0.1, -0.3, 0.2};
    EXPECT_EQ(triangle_energy(s, u, u), 0.0);
}

TEST(Energy, ScalingDirectionIsLinear)
{
    const auto s = EnergySpec::make(Family::EuclideanLength, 0).with_f_base(0.0);
    for (double d : {0.1, -0.4, 1.3}) {
        EXPECT_NEAR(triangle_energy(s, {d, d, d}, {0, 0, 0}), pi * d, 1e-12);
    }
}

TEST(Energy, PathIndependent)
{
    for (Family f : kAllFamilies) {
        for (double h : kGrid) {
            const auto s = EnergySpec::make(f, h);
            const Triple a = point(f, 500), b = point(f, 501), c = point(f, 502);
            Triple m{};
            for (int i = 0; i < 3; ++i) {
                m[i] = 0.25 * (a[i] + b[i]) + 0.5 * c[i];
            }
            const std::array<Triple, 3> detour{a, m, b};
            EXPECT_NEAR(segment_energy(s, a, b), path_energy(s, detour), 1e-8) << to_string(f) << " h=" << h;
        }
    }
}

TEST(Closedness, AnglePackingAtMinusOne)
{
    const auto s = EnergySpec::make(Family::HyperbolicAnglePacking, -1);
    for (std::uint64_t k = 0; k < 20; ++k) {
        EXPECT_LT(closedness_residual(s, u_of_variables(s, point(s.family, 600 + k))), 1e-7);
    }
}

TEST(Closedness, SphericalAtZero)
{
    const auto s = EnergySpec::make(Family::SphericalLength, 0);
    for (std::uint64_t k = 0; k < 20; ++k) {
        EXPECT_LT(closedness_residual(s, u_of_variables(s, point(s.family, 700 + k))), 1e-7);
    }
}

TEST(Closedness, SquaredAnglesAreNotClosed)
{
    const auto s = EnergySpec::make(Family::EuclideanLength, 0);
    auto squared = [](const Triple& l) {
        const Triple a = angles_from_lengths(Geometry::Euclidean, l);
        return Triple{a[0] * a[0], a[1] * a[1], a[2] * a[2]};
    };
    for (std::uint64_t k = 0; k < 20; ++k) {
        EXPECT_GT(closedness_residual_of(s, squared, point(s.family, 800 + k)), 1e3 * 1e-7);
    }
}

TEST(Reductions, EuclideanLengthsAtZero)
{
    // (i) at h = 0: u = ln l and the form is sum (a_i - pi/2) du_i
    const auto s = EnergySpec::make(Family::EuclideanLength, 0);
    const Triple l{0.8, 1.0, 1.3};
    const Triple a = angles_from_lengths(Geometry::Euclidean, l);
    const Triple g = triangle_gradient_at(s, l);
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(u_of_variable(s, l[i]), std::log(l[i]), 1e-15);
        EXPECT_NEAR(g[i], a[i] - pi / 2, 1e-14);
    }
}

TEST(Reductions, PackingForms)
{
    // (iii), (iv) at h = 0: u = ln r, ln tanh(r/2) up to a constant; the form is sum a_i du_i
    const Triple r{0.4, 0.9, 1.6};
    for (Family f : {Family::EuclideanPacking, Family::HyperbolicPacking}) {
        const auto s = EnergySpec::make(f, 0);
        const Geometry g = s.geometry();
        const Triple a = circle_packing_angles(g, r);
        const Triple grad = triangle_gradient_at(s, r);
        for (int i = 0; i < 3; ++i) {
            EXPECT_NEAR(grad[i], a[i], 1e-13);
            const double want = f == Family::EuclideanPacking ? std::log(r[i])
                                                              : std::log(std::tanh(r[i] / 2) / std::tanh(0.5));
            EXPECT_NEAR(u_of_variable(s, r[i]), want, 1e-13);
        }
    }
}

TEST(Reductions, AnglePackingAtMinusOne)
{
    // (v) at h = -1 the integrand is coth(t/2), whose antiderivative is 2 ln sinh(t/2)
    const auto s = EnergySpec::make(Family::HyperbolicAnglePacking, -1);
    const Triple r{0.3, 0.5, 0.7};
    const Triple l = output_of_variables(s, r);
    const Triple g = triangle_gradient_at(s, r);
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(g[i], 2 * std::log(std::sinh(l[i] / 2)) - 2 * std::log(std::sinh(pi / 4)), 1e-10);
    }
}

TEST(DualForms, CoordinateMatchesQuadrature)
{
    for (DualForm form : {DualForm::Hexagon, DualForm::HyperbolicTriangle}) {
        for (double h : {-2.0, -1.5, 0.0, 0.5, 2.0}) {
            const DualSpec s{form, h};
            for (double l : {0.3, 1.0, 2.7}) {
                const double want = simpson([&](double x) { return dual_coordinate_density(s, x); }, 1.0, l);
                EXPECT_NEAR(dual_coordinate(s, l), want, 1e-10 * std::max(1.0, std::abs(want)));
                EXPECT_NEAR(dual_length(s, dual_coordinate(s, l)), l, 1e-10);
            }
        }
    }
}

TEST(DualForms, HessianMatchesGradient)
{
    sample::Rng rng(1, 1);
    for (DualForm form : {DualForm::Hexagon, DualForm::HyperbolicTriangle}) {
        for (double h : kGrid) {
            const DualSpec s{form, h};
            for (int k = 0; k < 10; ++k) {
                const Triple l = form == DualForm::Hexagon ? sample::hexagon_arcs(rng) : sample::hyperbolic_lengths(rng);
                const Matrix3 H = dual_hessian_at(s, l);
                Matrix3 F;
                for (int j = 0; j < 3; ++j) {
                    // step in V_j sized so that l_j moves by about 1e-5 l_j
                    const double v = dual_coordinate(s, l[j]);
                    const double dv = 1e-5 * l[j] * dual_coordinate_density(s, l[j]);
                    auto at = [&](double k) {
                        Triple x = l;
                        x[j] = dual_length(s, v + k * dv);
                        return dual_gradient_at(s, x);
                    };
                    const Triple p1 = at(1), m1 = at(-1), p2 = at(2), m2 = at(-2);
                    for (int i = 0; i < 3; ++i) {
                        F(i, j) = (8 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12 * dv);
                    }
                }
                const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
                EXPECT_LT((H - F).cwiseAbs().maxCoeff(), 1e-5 * scale) << int(form) << " h=" << h;
                EXPECT_LT((H - H.transpose()).cwiseAbs().maxCoeff(), 1e-10 * scale);
            }
        }
    }
}

TEST(DualForms, HexagonEnergyConcave)
{
    // observed: every sampled Hessian in V coordinates is negative definite
    sample::Rng rng(2, 2);
    for (double h : kGrid) {
        const DualSpec s{DualForm::Hexagon, h};
        for (int k = 0; k < 20; ++k) {
            Eigen::SelfAdjointEigenSolver<Matrix3> es(dual_hessian_at(s, sample::hexagon_arcs(rng)));
            EXPECT_LT(es.eigenvalues().maxCoeff(), 0.0) << "h=" << h;
        }
    }
}
