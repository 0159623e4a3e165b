#include <gtest/gtest.h>

#include "malfatti/constructions.hpp"
#include "malfatti/error.hpp"
#include "malfatti/schellbach.hpp"
#include "support.hpp"

using namespace malfatti;
using testing_support::Rng;

namespace {

struct Setup {
    DerivedQuantities d;
    Triple aux;
};

Setup setup(const TriangleSides& t) {
    auto d = derived_quantities(t);
    return {d, auxiliary_angles(d.s, d.l, d.m, d.n)};
}

template <class F>
double bisect(F f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (lo + hi), fm = f(m);
        if ((fm < 0) == (flo < 0))
            lo = m, flo = fm;
        else
            hi = m;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(DerivedQuantities, Examples) {
    auto e = derived_quantities({1, 1, 1});
    EXPECT_DOUBLE_EQ(e.s, 1.5);
    EXPECT_DOUBLE_EQ(e.l, 0.25);
    EXPECT_DOUBLE_EQ(e.m, 0.25);
    EXPECT_DOUBLE_EQ(e.n, 0.25);
    auto f = derived_quantities({2, 2, 3});
    EXPECT_DOUBLE_EQ(f.s, 3.5);
    EXPECT_DOUBLE_EQ(f.l, 0.25);
    EXPECT_DOUBLE_EQ(f.m, 0.25);
    EXPECT_DOUBLE_EQ(f.n, 1.25);
    Rng rng(31);
    for (int k = 0; k < 100; ++k) {
        auto d = derived_quantities(rng.triangle(0.05, 3.0));
        EXPECT_NEAR(d.l + d.m + d.n - d.s / 2, 0.0, 1e-14);
    }
}

TEST(AuxiliaryAngles, Examples) {
    auto eq = auxiliary_angles(1.2, 0.2, 0.2, 0.2);
    EXPECT_DOUBLE_EQ(eq[0], eq[1]);
    EXPECT_DOUBLE_EQ(eq[1], eq[2]);
    EXPECT_EQ(auxiliary_angles(1.2, 0.3, 0.0, 0.3)[0], 0.0);
    auto [d, aux] = setup({1, 1, 1});
    EXPECT_NEAR(std::tanh(aux[0]) - std::tanh(d.m) * std::tanh(d.n) / std::tanh(d.s / 2), 0.0, 1e-14);
    EXPECT_THROW(auxiliary_angles(0.1, 1.0, 1.0, 1.0), Error);
}

TEST(SubsidiaryAngles, BoundaryArgumentGivesPhi) {
    // l = m = 0, n = s/2: the arccosh arguments of lambda and mu are exactly 1
    double s = 1.4;
    Triple aux = auxiliary_angles(s, 0.0, 0.0, s / 2);
    auto q = subsidiary_arguments(s, 0.0, 0.0, s / 2, aux);
    EXPECT_NEAR(q[0], 1.0, 1e-15);
    auto br = subsidiary_branches(s, 0.0, 0.0, s / 2, aux);
    EXPECT_NEAR(br[0][0], aux[0], 1e-7);
    EXPECT_NEAR(br[0][1], aux[0], 1e-7);
}

TEST(SubsidiaryAngles, EquilateralMatchesBisection) {
    auto [d, aux] = setup({1, 1, 1});
    Triple sub = subsidiary_angles(d.s, d.l, d.m, d.n, aux);
    EXPECT_NEAR(sub[0], sub[1], 1e-14);
    EXPECT_NEAR(sub[1], sub[2], 1e-14);
    // roots of the defining condition bracketed in [0, s]
    auto g = [&](double v) { return subsidiary_condition(0, v, d.s, d.l, d.m, d.n); };
    std::vector<double> found;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        double lo = d.s * i / n, hi = d.s * (i + 1) / n;
        if (g(lo) * g(hi) <= 0)
            found.push_back(bisect(g, lo, hi));
    }
    ASSERT_FALSE(found.empty());
    double best = 1e9;
    for (double r : found)
        best = std::min(best, std::abs(r - sub[0]));
    EXPECT_LT(best, 1e-12);
}

TEST(SubsidiaryAngles, BothBranchesSolveTheConditionOnlyOneTheSystem) {
    Rng rng(32);
    int checked = 0;
    for (int k = 0; k < 200; ++k) {
        auto t = rng.triangle(0.2, 2.5, 0.05);
        if (std::abs(t.a - t.b) < 0.05 || std::abs(t.b - t.c) < 0.05 || std::abs(t.a - t.c) < 0.05)
            continue;
        auto [d, aux] = setup(t);
        auto br = subsidiary_branches(d.s, d.l, d.m, d.n, aux);
        Triple chosen = subsidiary_angles(d.s, d.l, d.m, d.n, aux);
        for (int i = 0; i < 3; ++i)
            for (double v : br[i])
                EXPECT_LT(std::abs(subsidiary_condition(i, v, d.s, d.l, d.m, d.n)), 1e-11);
        ++checked;
        // swapping any single angle to its other branch breaks the fundamental system
        for (int i = 0; i < 3; ++i) {
            Triple other = chosen;
            other[i] = std::abs(br[i][0] - chosen[i]) < 1e-12 ? br[i][1] : br[i][0];
            if (std::abs(other[i] - chosen[i]) < 1e-3)
                continue;
            double worst = 1e9;
            try {
                PairSums ps = pair_sums(d.s, d.l, d.m, d.n, other);
                double xi = 0.5 * (ps.sums[1] + ps.sums[2] - ps.sums[0]);
                double eta = 0.5 * (ps.sums[2] + ps.sums[0] - ps.sums[1]);
                double zeta = 0.5 * (ps.sums[0] + ps.sums[1] - ps.sums[2]);
                auto r = fundamental_residuals(d.s, d.l, d.m, d.n, xi, eta, zeta);
                worst = std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
            } catch (const Error&) {  // no real pair sums at all
            }
            EXPECT_GT(worst, 1e-6);
        }
    }
    EXPECT_GT(checked, 50);
}

TEST(PairSums, EquilateralAndLinearIdentity) {
    auto [d, aux] = setup({1, 1, 1});
    PairSums ps = pair_sums(d.s, d.l, d.m, d.n, subsidiary_angles(d.s, d.l, d.m, d.n, aux));
    EXPECT_NEAR(ps.sums[0], ps.sums[1], 1e-14);
    EXPECT_NEAR(ps.sums[1], ps.sums[2], 1e-14);
    for (double v : ps.differences)
        EXPECT_NEAR(v, 0.0, 1e-7);

    Rng rng(33);
    for (int k = 0; k < 100; ++k) {
        auto t = rng.triangle(0.05, 3.0);
        auto sol = solve(t);
        auto [dd, ax] = setup(t);
        PairSums p = pair_sums(dd.s, dd.l, dd.m, dd.n, subsidiary_angles(dd.s, dd.l, dd.m, dd.n, ax));
        EXPECT_NEAR(p.sums[0] + p.sums[1] + p.sums[2], 2.0 * (sol.xi + sol.eta + sol.zeta), 1e-9);
        EXPECT_NEAR(p.sums[0], sol.eta + sol.zeta, 1e-9);
        EXPECT_NEAR(p.sums[1], sol.zeta + sol.xi, 1e-9);
        EXPECT_NEAR(p.sums[2], sol.xi + sol.eta, 1e-9);
    }
}

TEST(Solve, EquilateralMatchesOneDimensionalOracle) {
    auto sol = solve({1, 1, 1});
    EXPECT_NEAR(sol.x, sol.y, 1e-13);
    EXPECT_NEAR(sol.y, sol.z, 1e-13);
    auto g = [](double xi) {
        return std::cosh(0.25) * std::cosh(xi) * std::cosh(xi) / std::cosh(0.75) +
               std::sinh(0.25) * std::sinh(xi) * std::sinh(xi) / std::sinh(0.75) - 1.0;
    };
    double xi = bisect(g, 0.0, 0.75);
    EXPECT_NEAR(sol.xi, xi, 1e-13);
    EXPECT_NEAR(sol.x, 0.75 - xi, 1e-13);
}

TEST(Solve, ScaleneResidualsAndDirectOracle) {
    auto sol = solve({1.0, 1.3, 1.7});
    for (double r : sol.residuals)
        EXPECT_LT(std::abs(r), 1e-11);
    auto direct = testing_support::direct_malfatti({1.0, 1.3, 1.7});
    EXPECT_NEAR(sol.x, direct[0], 1e-10);
    EXPECT_NEAR(sol.y, direct[1], 1e-10);
    EXPECT_NEAR(sol.z, direct[2], 1e-10);
    EXPECT_NEAR(sol.x, 0.79679, 1e-5);
    EXPECT_NEAR(sol.z, 0.16010, 1e-5);
}

TEST(Solve, AgreesWithDirectTangencySolve) {
    Rng rng(34);
    for (int k = 0; k < 100; ++k) {
        auto t = rng.triangle(0.05, 3.0);
        auto sol = solve(t);
        auto direct = testing_support::direct_malfatti(t);
        EXPECT_NEAR(sol.x, direct[0], 1e-9) << t.a << " " << t.b << " " << t.c;
        EXPECT_NEAR(sol.y, direct[1], 1e-9);
        EXPECT_NEAR(sol.z, direct[2], 1e-9);
        EXPECT_GT(sol.x, 0.0);
        EXPECT_LT(sol.x, std::min(t.b, t.c));
        EXPECT_LT(sol.y, std::min(t.c, t.a));
        EXPECT_LT(sol.z, std::min(t.a, t.b));
        EXPECT_LE(sol.polish_iterations, 50);
    }
}

TEST(Solve, EuclideanLimit) {
    const double a0 = 1.0, b0 = 1.3, c0 = 1.7;
    auto e = testing_support::euclidean_malfatti(a0, b0, c0);
    // e solves its own system
    {
        double A = std::acos((b0 * b0 + c0 * c0 - a0 * a0) / (2 * b0 * c0));
        double B = std::acos((c0 * c0 + a0 * a0 - b0 * b0) / (2 * c0 * a0));
        double rA = e[0] * std::tan(A / 2), rB = e[1] * std::tan(B / 2);
        EXPECT_NEAR(e[0] + e[1] + 2 * std::sqrt(rA * rB), c0, 1e-12);
    }
    double prev = 0.0;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        auto sol = solve({eps * a0, eps * b0, eps * c0});
        double err = std::max({std::abs(sol.x / eps - e[0]), std::abs(sol.y / eps - e[1]),
                               std::abs(sol.z / eps - e[2])});
        if (prev > 0.0) {
            EXPECT_GT(prev / err, 50.0);
            EXPECT_LT(prev / err, 200.0);
        }
        prev = err;
    }
}

TEST(SchellbachProperties, IdentityChainAndConsistency) {
    Rng rng(35);
    for (int k = 0; k < 300; ++k) {
        auto t = rng.triangle(0.05, 3.0);
        auto sol = solve(t);
        EXPECT_NEAR(t.a + t.b + t.c - 2 * sol.s, 0.0, 1e-12);
        EXPECT_NEAR(sol.l + sol.m + sol.n - sol.s / 2, 0.0, 1e-12);
        for (double r : sol.residuals)
            EXPECT_LT(std::abs(r), 1e-11);
        auto r = fundamental_residuals(sol.s, sol.l, sol.m, sol.n, sol.xi, sol.eta, sol.zeta);
        for (double v : r)
            EXPECT_LT(std::abs(v), 1e-11);
        for (double c : sol.consistency)
            EXPECT_LT(std::abs(c), 1e-9);
        EXPECT_NEAR(sol.x, sol.s / 2 - sol.xi, 1e-14);
    }
}

TEST(SchellbachProperties, PermutationAndSymmetry) {
    Rng rng(36);
    for (int k = 0; k < 100; ++k) {
        auto t = rng.triangle(0.05, 3.0);
        auto s0 = solve(t);
        auto s1 = solve({t.b, t.c, t.a});
        EXPECT_NEAR(s1.x, s0.y, 1e-10);
        EXPECT_NEAR(s1.y, s0.z, 1e-10);
        EXPECT_NEAR(s1.z, s0.x, 1e-10);
        auto s2 = solve({t.b, t.a, t.c});
        EXPECT_NEAR(s2.x, s0.y, 1e-10);
        EXPECT_NEAR(s2.y, s0.x, 1e-10);
        EXPECT_NEAR(s2.z, s0.z, 1e-10);

        double a = rng.uniform(0.1, 2.5), c = rng.uniform(0.05, 1.9 * a);
        auto iso = solve({a, a, c});
        EXPECT_NEAR(iso.x, iso.y, 1e-10);
    }
}

TEST(AnalyticCircles, TangencyAndRadius) {
    Rng rng(37);
    for (int k = 0; k < 100; ++k) {
        auto s = rng.triangle(0.05, 3.0);
        HTriangle t = embed_triangle(s.a, s.b, s.c);
        auto sol = solve(s);
        auto circles = analytic_circles(t, sol);
        auto sys = triangle_system(t, circles);
        EXPECT_TRUE(sys.all_valid());
        EXPECT_LT(sys.max_residual(), 1e-9);
        const Vec2 V[3] = {t.A, t.B, t.C};
        const double tl[3] = {sol.x, sol.y, sol.z};
        for (int i = 0; i < 3; ++i) {
            auto h = hyperbolic_circle(circles[i]);
            auto X = lorentz::from_disk(V[i]);
            // tangent length from the vertex and its tangency points on both sides
            for (int j : {1, 2}) {
                auto N = lorentz::line_through(X, lorentz::from_disk(V[(i + j) % 3]));
                auto F = lorentz::foot(h.center, N);
                EXPECT_NEAR(lorentz::distance(F, X), tl[i], 1e-9);
                EXPECT_NEAR(std::asinh(std::abs(lorentz::ldot(h.center, N))), h.radius, 1e-9);
            }
            double alpha = triangle_angle(t, static_cast<Vertex>(i));
            EXPECT_NEAR(std::tan(alpha / 2), std::tanh(h.radius) / std::sinh(tl[i]), 1e-9);
            auto h2 = hyperbolic_circle(circles[(i + 1) % 3]);
            EXPECT_NEAR(lorentz::distance(h.center, h2.center), h.radius + h2.radius, 1e-8);
        }
    }
}

TEST(AnalyticCircles, EquilateralSymmetry) {
    // equilateral triangle rotated about its center position
    HTriangle t = embed_triangle(1.0, 1.0, 1.0);
    auto c = analytic_circles(t, solve({1, 1, 1}));
    double r0 = hyperbolic_circle(c[0]).radius;
    for (const auto& ci : c)
        EXPECT_NEAR(hyperbolic_circle(ci).radius, r0, 1e-13);
    auto d01 = lorentz::distance(hyperbolic_circle(c[0]).center, hyperbolic_circle(c[1]).center);
    auto d12 = lorentz::distance(hyperbolic_circle(c[1]).center, hyperbolic_circle(c[2]).center);
    EXPECT_NEAR(d01, d12, 1e-12);
    EXPECT_NEAR(d01, 2 * r0, 1e-12);
}
