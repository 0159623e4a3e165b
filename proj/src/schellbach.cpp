#include "malfatti/schellbach.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "malfatti/error.hpp"

namespace malfatti {

using lorentz::LVec;

namespace {

double max_abs(const Triple& t) {
    return std::max({std::abs(t[0]), std::abs(t[1]), std::abs(t[2])});
}

// (own, first, second) of the cyclic pattern l;m,n  m;n,l  n;l,m
std::array<double, 3> rot(int i, double l, double m, double n) {
    switch (i) {
    case 0: return {l, m, n};
    case 1: return {m, n, l};
    default: return {n, l, m};
    }
}

}  // namespace

DerivedQuantities derived_quantities(const TriangleSides& t) {
    double s = 0.5 * (t.a + t.b + t.c);
    return {s, t.a - 0.5 * s, t.b - 0.5 * s, t.c - 0.5 * s};
}

Triple auxiliary_angles(double s, double l, double m, double n) {
    Triple out{};
    double coth = 1.0 / std::tanh(0.5 * s);
    for (int i = 0; i < 3; ++i) {
        auto [own, p, q] = rot(i, l, m, n);
        (void)own;
        double arg = std::tanh(p) * std::tanh(q) * coth;
        if (!(std::abs(arg) < 1.0))
            throw Error(ErrorCode::ArgumentOutOfRange, "artanh argument outside (-1, 1)");
        out[i] = std::atanh(arg);
    }
    return out;
}

Triple subsidiary_arguments(double s, double l, double m, double n, const Triple& aux) {
    Triple out{};
    for (int i = 0; i < 3; ++i) {
        auto [own, p, q] = rot(i, l, m, n);
        (void)own;
        out[i] = std::cosh(0.5 * s) * std::cosh(aux[i]) / (std::cosh(p) * std::cosh(q));
    }
    return out;
}

double subsidiary_condition(int index, double value, double s, double l, double m, double n) {
    auto [own, p, q] = rot(index, l, m, n);
    (void)own;
    return std::cosh(value) * std::cosh(p) * std::cosh(q) / std::cosh(0.5 * s) -
           std::sinh(value) * std::sinh(p) * std::sinh(q) / std::sinh(0.5 * s) - 1.0;
}

std::array<std::array<double, 2>, 3> subsidiary_branches(double s, double l, double m, double n,
                                                         const Triple& aux, double tol) {
    Triple q = subsidiary_arguments(s, l, m, n, aux);
    std::array<std::array<double, 2>, 3> out{};
    for (int i = 0; i < 3; ++i) {
        if (q[i] < 1.0 - tol)
            throw Error(ErrorCode::NoRealSolution, "arccosh argument below 1");
        double w = std::acosh(std::max(1.0, q[i]));
        out[i] = {aux[i] - w, aux[i] + w};
    }
    return out;
}

Triple subsidiary_angles(double s, double l, double m, double n, const Triple& aux, double tol) {
    auto br = subsidiary_branches(s, l, m, n, aux, tol);
    return {br[0][1], br[1][1], br[2][1]};
}

PairSums pair_sums(double s, double l, double m, double n, const Triple& sub, double tol) {
    PairSums out;
    const Triple own{l, m, n};
    for (int i = 0; i < 3; ++i) {
        double den = std::cosh(0.5 * (sub[i] + own[i]));
        double qs = std::cosh(0.5 * (s + sub[i] - own[i])) / den;
        double qd = std::cosh(0.5 * (s - sub[i] + own[i])) / den;
        if (qs < 1.0 - tol || qd < 1.0 - tol)
            throw Error(ErrorCode::NoRealSolution, "pair-sum quotient below 1");
        out.sums[i] = std::acosh(std::max(1.0, qs));
        out.differences[i] = std::acosh(std::max(1.0, qd));
    }
    return out;
}

Triple fundamental_residuals(double s, double l, double m, double n, double xi, double eta,
                             double zeta) {
    const double C = std::cosh(0.5 * s), S = std::sinh(0.5 * s);
    auto f = [&](double k, double u, double v) {
        return std::cosh(k) * std::cosh(u) * std::cosh(v) / C +
               std::sinh(k) * std::sinh(u) * std::sinh(v) / S - 1.0;
    };
    return {f(l, eta, zeta), f(m, zeta, xi), f(n, xi, eta)};
}

namespace {

struct Candidate {
    Triple sub;
    Triple unknowns;  // xi, eta, zeta
    double residual;
};

int polish(const DerivedQuantities& d, Triple& u, double tol) {
    const double C = std::cosh(0.5 * d.s), S = std::sinh(0.5 * d.s);
    const Triple own{d.l, d.m, d.n};
    // equation i involves unknowns (i+1, i+2) mod 3 with xi=0, eta=1, zeta=2
    auto eval = [&](const Triple& v) {
        return fundamental_residuals(d.s, d.l, d.m, d.n, v[0], v[1], v[2]);
    };
    Triple F = eval(u);
    int it = 0;
    for (; it < 50 && max_abs(F) > 1e-15; ++it) {
        Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
        for (int i = 0; i < 3; ++i) {
            int p = (i + 1) % 3, q = (i + 2) % 3;
            double k = own[i];
            J(i, p) = std::cosh(k) * std::sinh(u[p]) * std::cosh(u[q]) / C +
                      std::sinh(k) * std::cosh(u[p]) * std::sinh(u[q]) / S;
            J(i, q) = std::cosh(k) * std::cosh(u[p]) * std::sinh(u[q]) / C +
                      std::sinh(k) * std::sinh(u[p]) * std::cosh(u[q]) / S;
        }
        Eigen::Vector3d rhs(-F[0], -F[1], -F[2]);
        Eigen::Vector3d step = J.partialPivLu().solve(rhs);
        if (!step.allFinite())
            throw Error(ErrorCode::NoConvergence, "singular Jacobian in polish");
        double t = 1.0;
        Triple next{};
        Triple Fn{};
        for (int h = 0; h < 40; ++h, t *= 0.5) {
            next = {u[0] + t * step(0), u[1] + t * step(1), u[2] + t * step(2)};
            Fn = eval(next);
            if (max_abs(Fn) < max_abs(F))
                break;
        }
        if (!(max_abs(Fn) < max_abs(F)))
            break;  // no further decrease possible at double precision
        u = next;
        F = Fn;
        if (step.cwiseAbs().maxCoeff() * t < 1e-17)
            break;
    }
    if (!(max_abs(F) < tol))
        throw Error(ErrorCode::NoConvergence, "fundamental system polish did not converge");
    return it;
}

}  // namespace

SchellbachSolution solve(const TriangleSides& t, double tol) {
    if (!(t.a > 0.0 && t.b > 0.0 && t.c > 0.0) || t.a >= t.b + t.c || t.b >= t.c + t.a ||
        t.c >= t.a + t.b)
        throw Error(ErrorCode::ViolatedTriangleInequality, "invalid triangle sides");
    DerivedQuantities d = derived_quantities(t);
    Triple aux = auxiliary_angles(d.s, d.l, d.m, d.n);
    auto br = subsidiary_branches(d.s, d.l, d.m, d.n, aux);
    const Triple sides{t.a, t.b, t.c};

    // every term of the fundamental system is 1 + O(s^2), so branch screening scales with s
    const double scale = std::min(1.0, d.s);
    std::vector<Candidate> valid;
    // preferred combination (+,+,+) first, then the remaining ones
    for (int mask = 7; mask >= 0; --mask) {
        Triple sub{br[0][(mask >> 2) & 1], br[1][(mask >> 1) & 1], br[2][mask & 1]};
        PairSums ps;
        try {
            ps = pair_sums(d.s, d.l, d.m, d.n, sub);
        } catch (const Error&) {
            continue;
        }
        Triple u{0.5 * (ps.sums[1] + ps.sums[2] - ps.sums[0]),
                 0.5 * (ps.sums[2] + ps.sums[0] - ps.sums[1]),
                 0.5 * (ps.sums[0] + ps.sums[1] - ps.sums[2])};
        double res = max_abs(fundamental_residuals(d.s, d.l, d.m, d.n, u[0], u[1], u[2]));
        bool inside = true;
        for (int i = 0; i < 3; ++i) {
            double tl = 0.5 * d.s - u[i];
            double lim = std::min(sides[(i + 1) % 3], sides[(i + 2) % 3]);
            inside = inside && tl > 0.0 && tl < lim;
        }
        if (res < 1e-6 * scale * scale && inside)
            valid.push_back({sub, u, res});
    }
    if (valid.empty())
        throw Error(ErrorCode::NoRealSolution, "no branch combination solves the fundamental system");
    for (const auto& c : valid)
        for (int i = 0; i < 3; ++i)
            if (std::abs(c.unknowns[i] - valid.front().unknowns[i]) > 1e-9 * scale)
                throw Error(ErrorCode::AmbiguousBranch,
                            "several branch combinations solve the system with different values");

    const Candidate& best = valid.front();
    Triple u = best.unknowns;
    SchellbachSolution sol;
    sol.polish_iterations = polish(d, u, tol);
    sol.s = d.s;
    sol.l = d.l;
    sol.m = d.m;
    sol.n = d.n;
    sol.phi = aux[0];
    sol.chi = aux[1];
    sol.psi = aux[2];
    sol.lambda = best.sub[0];
    sol.mu = best.sub[1];
    sol.nu = best.sub[2];
    sol.xi = u[0];
    sol.eta = u[1];
    sol.zeta = u[2];
    sol.x = 0.5 * d.s - u[0];
    sol.y = 0.5 * d.s - u[1];
    sol.z = 0.5 * d.s - u[2];
    sol.residuals = fundamental_residuals(d.s, d.l, d.m, d.n, u[0], u[1], u[2]);
    PairSums ps = pair_sums(d.s, d.l, d.m, d.n, best.sub);
    const Triple diff{u[1] - u[2], u[2] - u[0], u[0] - u[1]};
    for (int i = 0; i < 3; ++i)
        sol.consistency[i] = std::cosh(ps.differences[i]) - std::cosh(diff[i]);
    return sol;
}

std::array<Cycle, 3> analytic_circles(const HTriangle& t, const SchellbachSolution& sol) {
    const LVec P[3] = {lorentz::from_disk(t.A), lorentz::from_disk(t.B), lorentz::from_disk(t.C)};
    const Triple tl{sol.x, sol.y, sol.z};
    const Vertex vs[3] = {Vertex::A, Vertex::B, Vertex::C};
    std::array<Cycle, 3> out;
    for (int i = 0; i < 3; ++i) {
        const LVec& V = P[i];
        LVec u1 = lorentz::direction(V, P[(i + 1) % 3]);
        LVec u2 = lorentz::direction(V, P[(i + 2) % 3]);
        LVec bis = lorentz::unit_space(u1 + u2);
        double half = 0.5 * triangle_angle(t, vs[i]);
        double th = std::tan(half) * std::sinh(tl[i]);
        if (!(th < 1.0))
            throw Error(ErrorCode::NoRealSolution, "tangent length too long for the vertex angle");
        double r = std::atanh(th);
        double dcenter = std::acosh(std::cosh(tl[i]) * std::cosh(r));
        out[i] = cycle_of({lorentz::along(V, bis, dcenter), r});
    }
    return out;
}

}  // namespace malfatti
