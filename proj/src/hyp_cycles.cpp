#include "malfatti/hyp_cycles.hpp"

#include <cmath>

#include "malfatti/error.hpp"

namespace malfatti {

using lorentz::LVec;

HPoint::HPoint(Vec2 p) : p_(p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !(norm2(p) < 1.0 - 1e-12))
        throw Error(ErrorCode::PointOutsideModel, "point not strictly inside the model circle");
}

const char* to_string(CycleKind k) {
    switch (k) {
    case CycleKind::HyperbolicCircle: return "circle";
    case CycleKind::Paracycle: return "paracycle";
    case CycleKind::Hypercycle: return "hypercycle";
    case CycleKind::Geodesic: return "geodesic";
    }
    return "?";
}

const char* to_string(Branch b) { return b == Branch::Carrier ? "carrier" : "second"; }

double hyp_distance(Vec2 p, Vec2 q) {
    HPoint hp(p), hq(q);
    return hyp_distance(hp, hq);
}

double hyp_distance(const HPoint& p, const HPoint& q) {
    double den = std::sqrt((1.0 - norm2(p.model())) * (1.0 - norm2(q.model())));
    return 2.0 * std::asinh(dist(p.model(), q.model()) / den);
}

HTriangle HTriangle::from_vertices(Vec2 A, Vec2 B, Vec2 C) {
    HTriangle t{A, B, C, hyp_distance(B, C), hyp_distance(C, A), hyp_distance(A, B)};
    LVec N = lorentz::line_through(lorentz::from_disk(A), lorentz::from_disk(B));
    if (std::abs(lorentz::ldot(lorentz::from_disk(C), N)) < 1e-12)
        throw Error(ErrorCode::ViolatedTriangleInequality, "vertices on a common geodesic");
    return t;
}

std::optional<CycleKind> classify_carrier(const GeneralizedCircle& g, double tol) {
    if (const auto* l = as_line(g)) {
        double d = std::abs(l->offset);
        if (d <= tol)
            return CycleKind::Geodesic;
        if (d < 1.0 - tol)
            return CycleKind::Hypercycle;
        return std::nullopt;
    }
    const auto& c = std::get<ECircle>(g);
    if (!(c.radius > 0.0))
        return std::nullopt;
    double rho = norm(c.center);
    double R = c.radius;
    if (rho + R < 1.0 - tol)
        return CycleKind::HyperbolicCircle;
    if (std::abs(rho + R - 1.0) <= tol)
        return CycleKind::Paracycle;
    if (rho - R >= 1.0 - tol || R - rho >= 1.0 - tol)
        return std::nullopt;
    if (std::abs(rho * rho - 1.0 - R * R) <= tol)
        return CycleKind::Geodesic;
    return CycleKind::Hypercycle;
}

Cycle build_cycle(const GeneralizedCircle& g, double tol) {
    auto kind = classify_carrier(g, tol);
    if (!kind)
        throw Error(ErrorCode::CarrierOutsideModel, "carrier does not meet the open model disk");
    Cycle out{g, *kind, std::nullopt, 0.0, std::nullopt};
    if (*kind == CycleKind::Geodesic) {
        out.base_line = g;
        return out;
    }
    if (*kind != CycleKind::Hypercycle)
        return out;

    out.second_branch = apply_inversive_map(model_inversion(), g);
    auto ideal = intersect(g, ECircle{{0.0, 0.0}, 1.0});
    if (ideal.size() != 2)
        throw Error(ErrorCode::CarrierOutsideModel, "hypercycle carrier must cross the model circle");
    LVec U1{1.0, ideal[0].x, ideal[0].y};
    LVec U2{1.0, ideal[1].x, ideal[1].y};
    LVec N = lorentz::unit_space(lorentz::lcross(U1, U2));
    out.base_line = lorentz::carrier_of_line(N);

    Vec2 inner;
    if (const auto* l = as_line(g)) {
        inner = l->point();
    } else {
        const auto& c = std::get<ECircle>(g);
        double rho = norm(c.center);
        inner = c.center * (1.0 - c.radius / rho);
    }
    out.distance = std::asinh(std::abs(lorentz::ldot(lorentz::from_disk(inner), N)));
    return out;
}

std::vector<std::pair<Branch, GeneralizedCircle>> branches(const Cycle& c) {
    std::vector<std::pair<Branch, GeneralizedCircle>> out{{Branch::Carrier, c.carrier}};
    if (c.second_branch)
        out.emplace_back(Branch::Second, *c.second_branch);
    return out;
}

std::vector<TangencyCertificate> cycles_touching_all(const Cycle& c1, const Cycle& c2, double tol) {
    std::vector<TangencyCertificate> out;
    for (const auto& [b1, g1] : branches(c1))
        for (const auto& [b2, g2] : branches(c2))
            for (const auto& k : contacts(g1, g2)) {
                if (k.residual > tol || !(norm2(k.point) < 1.0 - 1e-12))
                    continue;
                out.push_back({k.point, normalized(k.direction), k.residual, {b1, b2}});
            }
    return out;
}

std::optional<TangencyCertificate> cycles_touching(const Cycle& c1, const Cycle& c2, double tol) {
    auto all = cycles_touching_all(c1, c2, tol);
    if (all.empty())
        return std::nullopt;
    return all.front();
}

lorentz::HCircle hyperbolic_circle(const Cycle& c) {
    const auto* e = as_circle(c.carrier);
    if (c.kind != CycleKind::HyperbolicCircle || !e)
        throw Error(ErrorCode::NotApplicable, "not a hyperbolic circle");
    return lorentz::circle_of_carrier(*e);
}

Cycle cycle_of(const lorentz::HCircle& c) {
    return Cycle{lorentz::carrier_of_circle(c), CycleKind::HyperbolicCircle, std::nullopt, 0.0,
                 std::nullopt};
}

Cycle geodesic_cycle(const LVec& N) {
    GeneralizedCircle g = lorentz::carrier_of_line(N);
    return Cycle{g, CycleKind::Geodesic, g, 0.0, std::nullopt};
}

double hyperbolic_distance_to_line(Vec2 p, const GeneralizedCircle& geodesic_carrier) {
    LVec N = lorentz::line_of_carrier(geodesic_carrier);
    return std::asinh(std::abs(lorentz::ldot(lorentz::from_disk(p), N)));
}

double tangent_length_point_cycle(const HPoint& p, const Cycle& c, double tol) {
    auto h = hyperbolic_circle(c);
    double d = lorentz::distance(lorentz::from_disk(p.model()), h.center);
    if (d < h.radius - tol)
        throw Error(ErrorCode::PointInsideCircle, "point inside the circle");
    return std::acosh(std::max(1.0, std::cosh(d) / std::cosh(h.radius)));
}

TangentSegmentLengths common_tangent_segment_lengths(const Cycle& c1, const Cycle& c2,
                                                     double tol) {
    auto h1 = hyperbolic_circle(c1);
    auto h2 = hyperbolic_circle(c2);
    double D = lorentz::distance(h1.center, h2.center);
    double r1 = h1.radius, r2 = h2.radius;
    if (D < std::abs(r1 - r2) - tol)
        throw Error(ErrorCode::NestedCircles, "nested circles have no common tangent");
    double den = std::cosh(r1) * std::cosh(r2);
    TangentSegmentLengths out;
    out.outer = std::acosh(std::max(1.0, (std::cosh(D) + std::sinh(r1) * std::sinh(r2)) / den));
    if (D >= r1 + r2 - tol)
        out.inner = std::acosh(std::max(1.0, (std::cosh(D) - std::sinh(r1) * std::sinh(r2)) / den));
    return out;
}

namespace {

double half_angle_tan(double opp, double s1, double s2) {
    double s = 0.5 * (opp + s1 + s2);
    return std::sqrt(std::sinh(s - s1) * std::sinh(s - s2) / (std::sinh(s) * std::sinh(s - opp)));
}

}  // namespace

HTriangle embed_triangle(double a, double b, double c) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0))
        throw Error(ErrorCode::ViolatedTriangleInequality, "side lengths must be positive");
    const double eps = 1e-12;
    if (a >= (b + c) * (1.0 - eps) || b >= (a + c) * (1.0 - eps) || c >= (a + b) * (1.0 - eps))
        throw Error(ErrorCode::ViolatedTriangleInequality, "strict triangle inequality violated");
    double alpha = 2.0 * std::atan(half_angle_tan(a, b, c));
    Vec2 B{std::tanh(0.5 * c), 0.0};
    Vec2 C = Vec2{std::cos(alpha), std::sin(alpha)} * std::tanh(0.5 * b);
    return HTriangle{{0.0, 0.0}, B, C, a, b, c};
}

double triangle_angle(const HTriangle& t, Vertex v) {
    switch (v) {
    case Vertex::A: return 2.0 * std::atan(half_angle_tan(t.a, t.b, t.c));
    case Vertex::B: return 2.0 * std::atan(half_angle_tan(t.b, t.c, t.a));
    case Vertex::C: return 2.0 * std::atan(half_angle_tan(t.c, t.a, t.b));
    }
    return 0.0;
}

Cycle angle_bisector(const HTriangle& t, Vertex v) {
    LVec A = lorentz::from_disk(t.A), B = lorentz::from_disk(t.B), C = lorentz::from_disk(t.C);
    LVec V = A, P1 = B, P2 = C;
    if (v == Vertex::B) {
        V = B, P1 = C, P2 = A;
    } else if (v == Vertex::C) {
        V = C, P1 = A, P2 = B;
    }
    LVec N1 = lorentz::oriented(lorentz::line_through(V, P1), P2);
    LVec N2 = lorentz::oriented(lorentz::line_through(V, P2), P1);
    return geodesic_cycle(lorentz::unit_space(N1 - N2));
}

Cycle incircle_of_geodesics(const Cycle& g1, const Cycle& g2, const Cycle& g3) {
    for (const Cycle* g : {&g1, &g2, &g3})
        if (g->kind != CycleKind::Geodesic)
            throw Error(ErrorCode::NoBoundedRegion, "incircle needs three geodesics");
    LVec N1 = lorentz::line_of_carrier(g1.carrier);
    LVec N2 = lorentz::line_of_carrier(g2.carrier);
    LVec N3 = lorentz::line_of_carrier(g3.carrier);
    auto v12 = lorentz::meet(N1, N2);
    auto v13 = lorentz::meet(N1, N3);
    auto v23 = lorentz::meet(N2, N3);
    if (!v12 || !v13 || !v23)
        throw Error(ErrorCode::NoBoundedRegion, "geodesics do not pairwise meet");
    auto h = lorentz::incircle(lorentz::oriented(N1, *v23), lorentz::oriented(N2, *v13),
                               lorentz::oriented(N3, *v12));
    if (!h)
        throw Error(ErrorCode::NoBoundedRegion, "no circle inside the geodesic triangle");
    return cycle_of(*h);
}

}  // namespace malfatti
