#include "malfatti/model_core.hpp"

#include <algorithm>
#include <array>
#include <numbers>

#include "malfatti/error.hpp"

namespace malfatti {

namespace {

struct Homog {
    double x, y, w;
};

Homog hcross(const Homog& a, const Homog& b) {
    return {a.y * b.w - a.w * b.y, a.w * b.x - a.x * b.w, a.x * b.y - a.y * b.x};
}

// external center as a homogeneous point (w = 0 when the radii agree)
Homog external_homog(const ECircle& c1, const ECircle& c2) {
    Vec2 p = c1.center * c2.radius - c2.center * c1.radius;
    return {p.x, p.y, c2.radius - c1.radius};
}

Homog internal_homog(const ECircle& c1, const ECircle& c2) {
    Vec2 p = c1.center * c2.radius + c2.center * c1.radius;
    return {p.x, p.y, c1.radius + c2.radius};
}

Vec2 reflect(const PlaneLine& axis, Vec2 p) {
    return p - axis.normal * (2.0 * axis.signed_distance(p));
}

}  // namespace

PlaneLine PlaneLine::make(Vec2 n, double d) {
    double len = norm(n);
    return {n / len, d / len};
}

PlaneLine PlaneLine::through(Vec2 a, Vec2 b) {
    Vec2 n = normalized(perp(b - a));
    return {n, dot(n, a)};
}

double power_of_point(Vec2 p, const ECircle& c) {
    return norm2(p - c.center) - c.radius * c.radius;
}

Vec2 apply_inversive_map(const InversiveMap& m, Vec2 p) {
    if (const auto* inv = std::get_if<Inversion>(&m)) {
        Vec2 d = p - inv->center;
        double d2 = norm2(d);
        if (d2 == 0.0)
            throw Error(ErrorCode::PointAtCenter, "cannot invert the inversion center");
        return inv->center + d * (inv->power / d2);
    }
    return reflect(std::get<Reflection>(m).axis, p);
}

GeneralizedCircle apply_inversive_map(const InversiveMap& m, const GeneralizedCircle& g,
                                      const Tolerance& tol) {
    if (const auto* ref = std::get_if<Reflection>(&m)) {
        if (const auto* c = as_circle(g))
            return ECircle{reflect(ref->axis, c->center), c->radius};
        const auto& l = std::get<PlaneLine>(g);
        Vec2 n = l.normal - ref->axis.normal * (2.0 * dot(ref->axis.normal, l.normal));
        Vec2 q = reflect(ref->axis, l.point());
        return PlaneLine{n, dot(n, q)};
    }
    const auto& inv = std::get<Inversion>(m);
    const Vec2 o = inv.center;
    const double k = inv.power;
    if (const auto* c = as_circle(g)) {
        Vec2 d = c->center - o;
        double dn = norm(d);
        if (std::abs(dn - c->radius) <= tol.kernel) {
            if (dn == 0.0)
                throw Error(ErrorCode::PointAtCenter, "point circle at the inversion center");
            Vec2 u = d / dn;
            double rr = 0.5 * (dn + c->radius);
            return PlaneLine{u, dot(u, o) + k / (2.0 * rr)};
        }
        double q = dn * dn - c->radius * c->radius;
        return ECircle{o + d * (k / q), std::abs(k) * c->radius / std::abs(q)};
    }
    const auto& l = std::get<PlaneLine>(g);
    double h = l.signed_distance(o);
    if (std::abs(h) <= tol.kernel)
        return l;
    return ECircle{o - l.normal * (k / (2.0 * h)), std::abs(k) / (2.0 * std::abs(h))};
}

SimilitudeCenters similitude_centers(const ECircle& c1, const ECircle& c2, const Tolerance& tol) {
    if (dist(c1.center, c2.center) <= tol.kernel && std::abs(c1.radius - c2.radius) <= tol.kernel)
        throw Error(ErrorCode::IdenticalCircles, "similitude centers of identical circles");
    SimilitudeCenters out;
    Homog e = external_homog(c1, c2);
    if (std::abs(e.w) > tol.kernel)
        out.external = Vec2{e.x / e.w, e.y / e.w};
    Homog i = internal_homog(c1, c2);
    out.internal = i.w > 0.0 ? Vec2{i.x / i.w, i.y / i.w} : (c1.center + c2.center) * 0.5;
    return out;
}

InversiveMap antisimilitude_map(const ECircle& c1, const ECircle& c2, const Tolerance& tol) {
    double d = dist(c1.center, c2.center);
    if (d <= c1.radius + c2.radius + tol.kernel)
        throw Error(ErrorCode::OverlappingInteriors, "antisimilitude needs disjoint closed disks");
    if (c1.radius <= 0.0 || c2.radius <= 0.0)
        throw Error(ErrorCode::DegenerateCenters, "antisimilitude of a point circle");
    if (std::abs(c1.radius - c2.radius) <= tol.kernel) {
        Vec2 n = normalized(c2.center - c1.center);
        Vec2 mid = (c1.center + c2.center) * 0.5;
        return Reflection{PlaneLine{n, dot(n, mid)}};
    }
    Vec2 e = (c1.center * c2.radius - c2.center * c1.radius) / (c2.radius - c1.radius);
    return Inversion{e, power_of_point(e, c1) * c2.radius / c1.radius};
}

Vec2 radical_center(const ECircle& c1, const ECircle& c2, const ECircle& c3, const Tolerance& tol) {
    Vec2 u = c2.center - c1.center;
    Vec2 v = c3.center - c1.center;
    double det = cross(u, v);
    if (std::abs(det) <= tol.kernel * std::max(norm(u) * norm(v), 1e-300))
        throw Error(ErrorCode::CollinearCenters, "radical axes are parallel");
    auto pw = [](const ECircle& c) { return norm2(c.center) - c.radius * c.radius; };
    double b1 = 0.5 * (pw(c2) - pw(c1));
    double b2 = 0.5 * (pw(c3) - pw(c1));
    return {(b1 * v.y - b2 * u.y) / det, (u.x * b2 - v.x * b1) / det};
}

Vec2 pole(const PlaneLine& l, const ECircle& c, const Tolerance& tol) {
    double h = l.signed_distance(c.center);
    if (std::abs(h) <= tol.kernel)
        throw Error(ErrorCode::LineThroughCenter, "pole of a line through the center");
    return c.center - l.normal * (c.radius * c.radius / h);
}

PlaneLine polar(Vec2 p, const ECircle& c, const Tolerance& tol) {
    Vec2 v = p - c.center;
    double len = norm(v);
    if (len <= tol.kernel)
        throw Error(ErrorCode::PointIsCenter, "polar of the center");
    Vec2 n = v / len;
    return {n, dot(n, c.center) + c.radius * c.radius / len};
}

bool admissible(const SimilitudeSigns& s) {
    int internal = (s.s12 == Similitude::Internal) + (s.s13 == Similitude::Internal) +
                   (s.s23 == Similitude::Internal);
    return internal == 0 || internal == 2;
}

std::vector<SimilitudeSigns> admissible_sign_triples() {
    using S = Similitude;
    return {{S::External, S::External, S::External},
            {S::External, S::Internal, S::Internal},
            {S::Internal, S::External, S::Internal},
            {S::Internal, S::Internal, S::External}};
}

PlaneLine similitude_axis(const ECircle& c1, const ECircle& c2, const ECircle& c3,
                          const SimilitudeSigns& signs, const Tolerance& tol) {
    if (!admissible(signs))
        throw Error(ErrorCode::InadmissibleSigns, "axis needs zero or two internal centers");
    auto pick = [](const ECircle& a, const ECircle& b, Similitude s) {
        Homog h = s == Similitude::External ? external_homog(a, b) : internal_homog(a, b);
        double scale = std::max({std::abs(h.x), std::abs(h.y), std::abs(h.w)});
        return Homog{h.x / scale, h.y / scale, h.w / scale};
    };
    std::array<Homog, 3> pts = {pick(c1, c2, signs.s12), pick(c1, c3, signs.s13),
                                pick(c2, c3, signs.s23)};
    int finite = 0;
    for (const auto& p : pts)
        finite += std::abs(p.w) > tol.kernel;
    if (finite == 0)
        throw Error(ErrorCode::DegenerateCenters, "all selected centers are at infinity");

    Homog best{0, 0, 0};
    double best_norm = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Homog l = hcross(pts[i], pts[j]);
            double n = std::hypot(l.x, l.y);
            if (n > best_norm) {
                best_norm = n;
                best = l;
            }
        }
    if (best_norm <= tol.kernel)
        throw Error(ErrorCode::DegenerateCenters, "selected centers coincide");
    // l.x X + l.y Y + l.w W = 0  ->  n.p = -l.w / |n|
    PlaneLine axis{Vec2{best.x, best.y} / best_norm, -best.w / best_norm};
    for (const auto& p : pts) {
        double r = std::abs(best.x * p.x + best.y * p.y + best.w * p.w) / best_norm;
        double scale = std::max(std::abs(p.w), 1e-300);
        if (std::abs(p.w) > tol.kernel ? r / scale > 1e-6 : r > 1e-6)
            throw Error(ErrorCode::DegenerateCenters, "similitude centers not collinear");
    }
    return axis;
}

std::vector<CommonTangent> common_tangents(const ECircle& c1, const ECircle& c2,
                                           const Tolerance& tol) {
    std::vector<CommonTangent> out;
    Vec2 dv = c1.center - c2.center;
    double len = norm(dv);
    if (len <= tol.kernel)
        return out;
    Vec2 u = dv / len;
    auto family = [&](double delta, TangentKind kind) {
        // n.(c1 - c2) = delta, n.c1 - d = r1
        double cs = delta / len;
        if (std::abs(cs) > 1.0 + tol.kernel / len)
            return;
        cs = std::clamp(cs, -1.0, 1.0);
        double sn2 = 1.0 - cs * cs;
        bool single = std::abs(std::abs(delta) - len) <= tol.kernel;
        std::vector<double> hs = single ? std::vector<double>{0.0}
                                        : std::vector<double>{std::sqrt(sn2), -std::sqrt(sn2)};
        for (double h : hs) {
            Vec2 n = u * cs + perp(u) * h;
            out.push_back({PlaneLine{n, dot(n, c1.center) - c1.radius}, kind});
        }
    };
    family(c1.radius - c2.radius, TangentKind::Outer);
    family(c1.radius + c2.radius, TangentKind::Inner);
    return out;
}

std::vector<Vec2> intersect(const GeneralizedCircle& a, const GeneralizedCircle& b,
                            const Tolerance& tol) {
    const auto* ca = as_circle(a);
    const auto* cb = as_circle(b);
    if (ca && cb) {
        Vec2 dv = cb->center - ca->center;
        double d = norm(dv);
        if (d <= tol.kernel) {
            if (std::abs(ca->radius - cb->radius) <= tol.kernel)
                throw Error(ErrorCode::CoincidentObjects, "coincident circles");
            return {};
        }
        Vec2 u = dv / d;
        double ext = d - (ca->radius + cb->radius);
        double in = d - std::abs(ca->radius - cb->radius);
        if (std::abs(ext) <= tol.kernel || std::abs(in) <= tol.kernel) {
            auto c = contacts(a, b);
            const Contact& best = std::abs(ext) <= std::abs(in) ? c.front() : c.back();
            return {best.point};
        }
        if (ext > 0.0 || in < 0.0)
            return {};
        double x = (d * d + ca->radius * ca->radius - cb->radius * cb->radius) / (2.0 * d);
        double h = std::sqrt(std::max(0.0, ca->radius * ca->radius - x * x));
        Vec2 base = ca->center + u * x;
        return {base + perp(u) * h, base - perp(u) * h};
    }
    if (ca || cb) {
        const ECircle& c = ca ? *ca : *cb;
        const PlaneLine& l = ca ? std::get<PlaneLine>(b) : std::get<PlaneLine>(a);
        double s = l.signed_distance(c.center);
        Vec2 f = c.center - l.normal * s;
        if (std::abs(std::abs(s) - c.radius) <= tol.kernel)
            return {f};
        if (std::abs(s) > c.radius)
            return {};
        double h = std::sqrt(c.radius * c.radius - s * s);
        return {f + l.direction() * h, f - l.direction() * h};
    }
    const auto& la = std::get<PlaneLine>(a);
    const auto& lb = std::get<PlaneLine>(b);
    double det = cross(la.normal, lb.normal);
    if (std::abs(det) <= tol.kernel) {
        double sgn = dot(la.normal, lb.normal) > 0 ? 1.0 : -1.0;
        if (std::abs(la.offset - sgn * lb.offset) <= tol.kernel)
            throw Error(ErrorCode::CoincidentObjects, "coincident lines");
        return {};
    }
    return {{(la.offset * lb.normal.y - lb.offset * la.normal.y) / det,
             (la.normal.x * lb.offset - lb.normal.x * la.offset) / det}};
}

GeneralizedCircle circle_through(Vec2 a, Vec2 b, Vec2 c, const Tolerance& tol) {
    Vec2 u = b - a;
    Vec2 v = c - a;
    double det = cross(u, v);
    double scale = std::max({norm2(u), norm2(v), norm2(c - b)});
    if (scale == 0.0)
        throw Error(ErrorCode::DegenerateConfiguration, "circle through one point");
    if (std::abs(det) <= tol.kernel * scale) {
        // collinear: line through the farthest pair
        std::array<std::pair<Vec2, Vec2>, 3> prs = {{{a, b}, {a, c}, {b, c}}};
        auto far = *std::max_element(prs.begin(), prs.end(), [](const auto& p, const auto& q) {
            return dist(p.first, p.second) < dist(q.first, q.second);
        });
        return PlaneLine::through(far.first, far.second);
    }
    double uu = norm2(u), vv = norm2(v);
    Vec2 off{(v.y * uu - u.y * vv) / (2.0 * det), (u.x * vv - v.x * uu) / (2.0 * det)};
    return ECircle{a + off, norm(off)};
}

std::vector<Contact> contacts(const GeneralizedCircle& a, const GeneralizedCircle& b) {
    const auto* ca = as_circle(a);
    const auto* cb = as_circle(b);
    if (ca && cb) {
        Vec2 dv = cb->center - ca->center;
        double d = norm(dv);
        if (d == 0.0)
            return {};
        Vec2 u = dv / d;
        std::vector<Contact> out;
        {
            Vec2 p1 = ca->center + u * ca->radius;
            Vec2 p2 = cb->center - u * cb->radius;
            out.push_back({(p1 + p2) * 0.5, perp(u), dist(p1, p2), ContactKind::External});
        }
        {
            double s = ca->radius >= cb->radius ? 1.0 : -1.0;
            Vec2 p1 = ca->center + u * (s * ca->radius);
            Vec2 p2 = cb->center + u * (s * cb->radius);
            out.push_back({(p1 + p2) * 0.5, perp(u), dist(p1, p2), ContactKind::Internal});
        }
        return out;
    }
    if (ca || cb) {
        const ECircle& c = ca ? *ca : *cb;
        const PlaneLine& l = ca ? std::get<PlaneLine>(b) : std::get<PlaneLine>(a);
        double s = l.signed_distance(c.center);
        Vec2 f = c.center - l.normal * s;
        Vec2 q = c.center - l.normal * (s >= 0.0 ? c.radius : -c.radius);
        return {{(f + q) * 0.5, l.direction(), dist(f, q), ContactKind::External}};
    }
    return {};
}

std::optional<Contact> tangency(const GeneralizedCircle& a, const GeneralizedCircle& b,
                                double tol) {
    std::optional<Contact> best;
    for (const auto& c : contacts(a, b))
        if (c.residual <= tol && (!best || c.residual < best->residual))
            best = c;
    return best;
}

double distance_to(const GeneralizedCircle& g, Vec2 p) {
    if (const auto* c = as_circle(g))
        return std::abs(dist(p, c->center) - c->radius);
    return std::abs(std::get<PlaneLine>(g).signed_distance(p));
}

double side_value(const GeneralizedCircle& g, Vec2 p) {
    if (const auto* c = as_circle(g))
        return dist(p, c->center) - c->radius;
    return std::get<PlaneLine>(g).signed_distance(p);
}

bool is_line(const GeneralizedCircle& g) { return std::holds_alternative<PlaneLine>(g); }
const ECircle* as_circle(const GeneralizedCircle& g) { return std::get_if<ECircle>(&g); }
const PlaneLine* as_line(const GeneralizedCircle& g) { return std::get_if<PlaneLine>(&g); }

std::vector<Vec2> sample(const GeneralizedCircle& g, int n, double half_length) {
    std::vector<Vec2> out;
    out.reserve(n);
    if (const auto* c = as_circle(g)) {
        for (int i = 0; i < n; ++i)
            out.push_back(c->at(2.0 * std::numbers::pi * (i + 0.5) / n));
        return out;
    }
    const auto& l = std::get<PlaneLine>(g);
    for (int i = 0; i < n; ++i) {
        double t = -half_length + 2.0 * half_length * (i + 0.5) / n;
        out.push_back(l.point() + l.direction() * t);
    }
    return out;
}

}  // namespace malfatti
