#include "malfatti/lorentz.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace malfatti::lorentz {

namespace {

// geodesics whose carrier circle would exceed this radius are written as diameters
constexpr double kDiameterThreshold = 1e-8;

}  // namespace

LVec lcross(const LVec& a, const LVec& b) {
    return {-(a.x * b.y - a.y * b.x), a.y * b.t - a.t * b.y, a.t * b.x - a.x * b.t};
}

LVec from_disk(Vec2 p) {
    double q = norm2(p);
    double w = 1.0 / (1.0 - q);
    return {(1.0 + q) * w, 2.0 * p.x * w, 2.0 * p.y * w};
}

Vec2 to_disk(const LVec& X) { return Vec2{X.x, X.y} / (1.0 + X.t); }

LVec unit_space(const LVec& v) { return v * (1.0 / std::sqrt(ldot(v, v))); }

LVec unit_time(const LVec& v) {
    double s = 1.0 / std::sqrt(-ldot(v, v));
    return v.t < 0.0 ? v * -s : v * s;
}

double distance(const LVec& X, const LVec& Y) {
    LVec d = X - Y;
    return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, ldot(d, d))));
}

LVec line_through(const LVec& A, const LVec& B) { return unit_space(lcross(A, B)); }

LVec oriented(const LVec& N, const LVec& toward) { return ldot(toward, N) < 0.0 ? -N : N; }

std::optional<LVec> meet(const LVec& N1, const LVec& N2) {
    LVec v = lcross(N1, N2);
    double q = ldot(v, v);
    if (!(q < -1e-24))
        return std::nullopt;
    return unit_time(v);
}

LVec foot(const LVec& X, const LVec& N) {
    double s = ldot(X, N);
    return (X - N * s) * (1.0 / std::sqrt(1.0 + s * s));
}

LVec direction(const LVec& A, const LVec& B) { return unit_space(B + A * ldot(A, B)); }

LVec along(const LVec& A, const LVec& U, double s) {
    return A * std::cosh(s) + U * std::sinh(s);
}

GeneralizedCircle carrier_of_line(const LVec& N) {
    Vec2 n{N.x, N.y};
    double len = norm(n);
    if (std::abs(N.t) <= kDiameterThreshold * len)
        return PlaneLine{n / len, 0.0};
    return ECircle{n / N.t, 1.0 / std::abs(N.t)};
}

LVec line_of_carrier(const GeneralizedCircle& g) {
    if (const auto* l = as_line(g))
        return {0.0, l->normal.x, l->normal.y};
    const auto& c = std::get<ECircle>(g);
    return unit_space(LVec{1.0, c.center.x, c.center.y} * (1.0 / c.radius));
}

ECircle carrier_of_circle(const HCircle& c) {
    Vec2 h = to_disk(c.center);
    double rho = norm(h);
    Vec2 u = rho > 0.0 ? h / rho : Vec2{1.0, 0.0};
    double t0 = 2.0 * std::atanh(rho);
    double p_hi = std::tanh(0.5 * (t0 + c.radius));
    double p_lo = std::tanh(0.5 * (t0 - c.radius));
    return {u * (0.5 * (p_hi + p_lo)), 0.5 * (p_hi - p_lo)};
}

HCircle circle_of_carrier(const ECircle& c) {
    double rho = norm(c.center);
    Vec2 u = rho > 0.0 ? c.center / rho : Vec2{1.0, 0.0};
    double t1 = 2.0 * std::atanh(rho - c.radius);
    double t2 = 2.0 * std::atanh(rho + c.radius);
    double tc = 0.5 * (t1 + t2);
    return {from_disk(u * std::tanh(0.5 * tc)), 0.5 * (t2 - t1)};
}

std::optional<HCircle> incircle(const LVec& N1, const LVec& N2, const LVec& N3) {
    Eigen::Matrix3d M;
    M << -N1.t, N1.x, N1.y, -N2.t, N2.x, N2.y, -N3.t, N3.x, N3.y;
    Eigen::Vector3d w = M.colPivHouseholderQr().solve(Eigen::Vector3d::Ones());
    if (!w.allFinite())
        return std::nullopt;
    LVec W{w(0), w(1), w(2)};
    double q = -ldot(W, W);
    if (!(q > 0.0) || W.t <= 0.0)
        return std::nullopt;
    double s = 1.0 / std::sqrt(q);
    return HCircle{W * s, std::asinh(s)};
}

std::vector<LVec> tangent_lines(const HCircle& c1, const HCircle& c2, TangentKind kind) {
    const double cD = -ldot(c1.center, c2.center);
    const double s1 = std::sinh(c1.radius);
    const double s2 = kind == TangentKind::Inner ? -std::sinh(c2.radius) : std::sinh(c2.radius);
    const double det = 1.0 - cD * cD;
    const double alpha = (-s1 + cD * s2) / det;
    const double beta = (-s2 + cD * s1) / det;
    LVec Wc = lcross(c1.center, c2.center);
    double w = ldot(Wc, Wc);
    double g2 = (1.0 + alpha * alpha + beta * beta + 2.0 * alpha * beta * cD) / w;
    if (!(g2 >= -1e-12))
        return {};
    double g = std::sqrt(std::max(0.0, g2));  // touching circles: one double tangent
    LVec base = c1.center * alpha + c2.center * beta;
    return {unit_space(base + Wc * g), unit_space(base - Wc * g)};
}

}  // namespace malfatti::lorentz
