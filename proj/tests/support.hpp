#pragma once

#include <array>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "malfatti/model_core.hpp"
#include "malfatti/lorentz.hpp"
#include "malfatti/schellbach.hpp"

namespace testing_support {

using malfatti::Vec2;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed) : gen(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
    Vec2 point(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }
    Vec2 in_disk(double rmax) {
        double r = rmax * std::sqrt(uniform(0.0, 1.0));
        double a = uniform(0.0, 2.0 * M_PI);
        return {r * std::cos(a), r * std::sin(a)};
    }

    // sides in [lo, hi] satisfying the triangle inequality with some slack
    malfatti::TriangleSides triangle(double lo, double hi, double slack = 1e-3) {
        for (;;) {
            double a = uniform(lo, hi), b = uniform(lo, hi), c = uniform(lo, hi);
            double m = std::min({b + c - a, c + a - b, a + b - c});
            if (m > slack * (a + b + c))
                return {a, b, c};
        }
    }
};

// Damped Newton with a forward-difference Jacobian; the unknowns must stay positive.
template <class F>
std::array<double, 3> newton3(F f, std::array<double, 3> x, int iters = 100) {
    auto norm_of = [](const std::array<double, 3>& v) { return std::hypot(v[0], v[1], v[2]); };
    for (int it = 0; it < iters; ++it) {
        auto r = f(x);
        if (norm_of(r) < 1e-15)
            break;
        Eigen::Matrix3d J;
        for (int j = 0; j < 3; ++j) {
            auto xp = x;
            double h = 1e-7 * std::max(1e-3, std::abs(x[j]));
            xp[j] += h;
            auto rp = f(xp);
            for (int i = 0; i < 3; ++i)
                J(i, j) = (rp[i] - r[i]) / h;
        }
        Eigen::Vector3d dx = J.fullPivLu().solve(-Eigen::Vector3d(r[0], r[1], r[2]));
        double step = 1.0;
        for (;;) {
            std::array<double, 3> xn{x[0] + step * dx[0], x[1] + step * dx[1], x[2] + step * dx[2]};
            if (xn[0] > 0 && xn[1] > 0 && xn[2] > 0 && norm_of(f(xn)) < norm_of(r)) {
                x = xn;
                break;
            }
            step *= 0.5;
            if (step < 1e-12)
                return x;
        }
    }
    return x;
}

// Hyperbolic Malfatti tangent lengths (x, y, z) straight from the tangency
// conditions: each circle touches the two sides at its vertex, at distance
// x from the vertex, and the circles touch pairwise.
inline std::array<double, 3> direct_malfatti(const malfatti::TriangleSides& t) {
    using namespace malfatti::lorentz;
    double ca = (std::cosh(t.b) * std::cosh(t.c) - std::cosh(t.a)) / (std::sinh(t.b) * std::sinh(t.c));
    double alpha = std::acos(ca);
    LVec A{1.0, 0.0, 0.0};
    LVec B = along(A, {0.0, 1.0, 0.0}, t.c);
    LVec C = along(A, {0.0, std::cos(alpha), std::sin(alpha)}, t.b);
    const LVec V[3] = {A, B, C};
    auto centers = [&](const std::array<double, 3>& x) {
        std::array<LVec, 3> O;
        std::array<double, 3> r{};
        for (int i = 0; i < 3; ++i) {
            const LVec& P = V[i];
            const LVec& Q = V[(i + 1) % 3];
            const LVec& R = V[(i + 2) % 3];
            LVec u = direction(P, Q), w = direction(P, R);
            double half = 0.5 * std::acos(std::clamp(ldot(u, w), -1.0, 1.0));
            r[i] = std::atanh(std::sinh(x[i]) * std::tan(half));
            LVec T = along(P, u, x[i]);
            LVec N = oriented(line_through(P, Q), R);
            O[i] = along(T, N, r[i]);
        }
        return std::make_pair(O, r);
    };
    auto f = [&](const std::array<double, 3>& x) {
        auto [O, r] = centers(x);
        std::array<double, 3> out{};
        for (int i = 0; i < 3; ++i)
            out[i] = distance(O[i], O[(i + 1) % 3]) - r[i] - r[(i + 1) % 3];
        return out;
    };
    double s = 0.5 * (t.a + t.b + t.c);
    return newton3(f, {0.5 * (s - t.a), 0.5 * (s - t.b), 0.5 * (s - t.c)});
}

// Euclidean Malfatti tangent lengths: t_A + t_B + 2 sqrt(r_A r_B) = c with
// r = t tan(half angle), solved by damped Newton.
inline std::array<double, 3> euclidean_malfatti(double a, double b, double c) {
    double A = std::acos((b * b + c * c - a * a) / (2 * b * c));
    double B = std::acos((c * c + a * a - b * b) / (2 * c * a));
    double C = M_PI - A - B;
    const double k[3] = {std::tan(A / 2), std::tan(B / 2), std::tan(C / 2)};
    const double side[3] = {c, a, b};  // AB, BC, CA
    auto f = [&](const std::array<double, 3>& t) {
        std::array<double, 3> out{};
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3;
            out[i] = t[i] + t[j] + 2.0 * std::sqrt(t[i] * k[i] * t[j] * k[j]) - side[i];
        }
        return out;
    };
    double s = 0.5 * (a + b + c);
    return newton3(f, {0.5 * (s - a), 0.5 * (s - b), 0.5 * (s - c)});
}

}  // namespace testing_support
