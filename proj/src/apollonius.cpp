#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "malfatti/constructions.hpp"
#include "malfatti/error.hpp"

namespace malfatti {

namespace {

double contact_residual(const GeneralizedCircle& a, const GeneralizedCircle& b) {
    double best = INFINITY;
    for (const auto& c : contacts(a, b))
        best = std::min(best, c.residual);
    return best;
}

bool same_object(const GeneralizedCircle& a, const GeneralizedCircle& b, double tol) {
    const auto* ca = as_circle(a);
    const auto* cb = as_circle(b);
    if (ca && cb)
        return dist(ca->center, cb->center) + std::abs(ca->radius - cb->radius) <=
               tol * (1.0 + ca->radius);
    const auto* la = as_line(a);
    const auto* lb = as_line(b);
    if (la && lb) {
        double s = dot(la->normal, lb->normal) > 0.0 ? 1.0 : -1.0;
        return norm(la->normal - lb->normal * s) + std::abs(la->offset - s * lb->offset) <= tol;
    }
    return false;
}

// Newton refinement of a circle tangent to three generalized circles, keeping
// the contact kinds of the starting point.
ECircle polish_circle(ECircle s, const std::array<GeneralizedCircle, 3>& in) {
    auto residual_vec = [&](const ECircle& c, Eigen::Matrix3d* J) {
        Eigen::Vector3d F;
        for (int i = 0; i < 3; ++i) {
            if (const auto* e = as_circle(in[i])) {
                Vec2 dv = c.center - e->center;
                double d = norm(dv);
                Vec2 g = d > 0.0 ? dv / d : Vec2{0.0, 0.0};
                double ext = std::abs(d - c.radius - e->radius);
                double inn = std::abs(d - std::abs(c.radius - e->radius));
                double sr = 1.0;
                if (ext <= inn) {
                    F(i) = d - c.radius - e->radius;
                    sr = -1.0;
                } else {
                    double sg = c.radius >= e->radius ? 1.0 : -1.0;
                    F(i) = d - sg * (c.radius - e->radius);
                    sr = -sg;
                }
                if (J)
                    J->row(i) << g.x, g.y, sr;
            } else {
                const auto& l = std::get<PlaneLine>(in[i]);
                double v = l.signed_distance(c.center);
                double sg = v >= 0.0 ? 1.0 : -1.0;
                F(i) = sg * v - c.radius;
                if (J)
                    J->row(i) << sg * l.normal.x, sg * l.normal.y, -1.0;
            }
        }
        return F;
    };
    for (int it = 0; it < 8; ++it) {
        Eigen::Matrix3d J;
        Eigen::Vector3d F = residual_vec(s, &J);
        double f0 = F.cwiseAbs().maxCoeff();
        if (f0 < 1e-15)
            break;
        Eigen::Vector3d step = J.partialPivLu().solve(-F);
        if (!step.allFinite())
            break;
        ECircle next{{s.center.x + step(0), s.center.y + step(1)}, s.radius + step(2)};
        if (!(next.radius > 0.0) || residual_vec(next, nullptr).cwiseAbs().maxCoeff() >= f0)
            break;
        s = next;
    }
    return s;
}

void add_unique(std::vector<GeneralizedCircle>& out, const GeneralizedCircle& g) {
    for (const auto& o : out)
        if (same_object(o, g, 1e-7))
            return;
    out.push_back(g);
}

}  // namespace

double apollonius_residual(const GeneralizedCircle& s, const std::array<GeneralizedCircle, 3>& in) {
    double r = 0.0;
    for (const auto& g : in)
        r = std::max(r, contact_residual(s, g));
    return r;
}

ECircle gergonne_apollonius(const ECircle& c1, const ECircle& c2, const ECircle& c3,
                            const ApolloniusSelection& sel, const Tolerance& tol) {
    const std::array<ECircle, 3> c{c1, c2, c3};
    Vec2 P;
    PlaneLine axis;
    // congruent inputs: the all-external axis is the line at infinity, whose
    // poles are the centers
    const bool at_infinity =
        sel.axis.s12 == Similitude::External && sel.axis.s13 == Similitude::External &&
        sel.axis.s23 == Similitude::External && std::abs(c1.radius - c2.radius) <= tol.kernel &&
        std::abs(c1.radius - c3.radius) <= tol.kernel;
    try {
        P = radical_center(c1, c2, c3, tol);
        if (!at_infinity)
            axis = similitude_axis(c1, c2, c3, sel.axis, tol);
    } catch (const Error& e) {
        throw Error(ErrorCode::DegenerateConfiguration, e.what());
    }
    std::array<Vec2, 3> Q;
    for (int i = 0; i < 3; ++i) {
        Vec2 Pi = c[i].center;
        try {
            if (!at_infinity)
                Pi = pole(axis, c[i], tol);
        } catch (const Error& e) {
            throw Error(ErrorCode::DegenerateConfiguration, e.what());
        }
        if (dist(P, Pi) <= tol.kernel)
            throw Error(ErrorCode::DegenerateConfiguration, "radical center coincides with a pole");
        auto pts = intersect(PlaneLine::through(P, Pi), c[i], tol);
        if (pts.empty())
            throw Error(ErrorCode::NoSuchTangentCircle, "line through the pole misses the circle");
        std::sort(pts.begin(), pts.end(),
                  [&](Vec2 a, Vec2 b) { return dist(a, P) < dist(b, P); });
        Q[i] = sel.far[i] ? pts.back() : pts.front();
    }
    GeneralizedCircle s = circle_through(Q[0], Q[1], Q[2], tol);
    const auto* sc = as_circle(s);
    if (!sc)
        throw Error(ErrorCode::NoSuchTangentCircle, "selected points are collinear");
    double scale = 1.0 + sc->radius;
    std::array<GeneralizedCircle, 3> in{c1, c2, c3};
    if (apollonius_residual(s, in) > 1e-6 * scale)
        throw Error(ErrorCode::NoSuchTangentCircle, "selected points give no tangent circle");
    return *sc;
}

std::vector<ApolloniusSolution> gergonne_enumerate(const ECircle& c1, const ECircle& c2,
                                                   const ECircle& c3, const Tolerance& tol) {
    std::vector<ApolloniusSolution> out;
    const std::array<GeneralizedCircle, 3> in{c1, c2, c3};
    for (const auto& signs : admissible_sign_triples())
        for (int mask = 0; mask < 8; ++mask) {
            ApolloniusSelection sel{signs, {bool(mask & 4), bool(mask & 2), bool(mask & 1)}};
            ECircle s;
            try {
                s = gergonne_apollonius(c1, c2, c3, sel, tol);
            } catch (const Error&) {
                continue;
            }
            s = polish_circle(s, in);
            bool dup = false;
            for (const auto& o : out)
                dup = dup || same_object(o.circle, s, 1e-7);
            if (!dup)
                out.push_back({s, sel, apollonius_residual(s, in)});
        }
    return out;
}

std::vector<GeneralizedCircle> apollonius_all(const std::array<GeneralizedCircle, 3>& in,
                                              const Tolerance& tol) {
    std::vector<GeneralizedCircle> out;
    bool all_circles = true;
    Vec2 c0{0.0, 0.0};
    double spread = 0.0;
    for (const auto& g : in) {
        if (const auto* c = as_circle(g)) {
            if (!(c->radius > 0.0))
                throw Error(ErrorCode::DegenerateConfiguration, "point inputs need the through-point solver");
            c0 = c0 + c->center;
            spread = std::max(spread, norm(c->center) + c->radius);
        } else {
            all_circles = false;
            c0 = c0 + std::get<PlaneLine>(g).point();
            spread = std::max(spread, std::abs(std::get<PlaneLine>(g).offset));
        }
    }
    c0 = c0 / 3.0;
    const double L = std::max(1.0, spread);

    if (all_circles) {
        for (const auto& s : gergonne_enumerate(std::get<ECircle>(in[0]), std::get<ECircle>(in[1]),
                                                std::get<ECircle>(in[2]), tol))
            add_unique(out, s.circle);
        if (out.size() == 8)
            return out;
    }

    int passes = 0;
    for (int k = 0; k < 16 && passes < 3 && out.size() < 8; ++k) {
        double ang = 2.399963229728653 * k + 0.5;
        Vec2 Z = c0 + Vec2{std::cos(ang), std::sin(ang)} * (L * (0.37 + 0.11 * k));
        bool clear = true;
        for (const auto& g : in)
            clear = clear && distance_to(g, Z) > 0.05 * L;
        if (!clear)
            continue;
        ++passes;
        InversiveMap inv = Inversion{Z, L * L};
        std::array<ECircle, 3> img;
        for (int i = 0; i < 3; ++i)
            img[i] = std::get<ECircle>(apply_inversive_map(inv, in[i], tol));
        for (const auto& s : gergonne_enumerate(img[0], img[1], img[2], tol)) {
            GeneralizedCircle back = apply_inversive_map(inv, s.circle, tol);
            if (const auto* bc = as_circle(back))
                back = polish_circle(*bc, in);
            double scale = as_circle(back) ? 1.0 + as_circle(back)->radius : 1.0;
            if (apollonius_residual(back, in) <= 1e-8 * scale)
                add_unique(out, back);
        }
    }
    return out;
}

std::vector<ThroughPointSolution> apollonius_through_point_all(Vec2 P, const GeneralizedCircle& k1,
                                                               const GeneralizedCircle& k2,
                                                               const Tolerance& tol) {
    InversiveMap inv = Inversion{P, 1.0};
    GeneralizedCircle g1 = apply_inversive_map(inv, k1, tol);
    GeneralizedCircle g2 = apply_inversive_map(inv, k2, tol);
    std::vector<PlaneLine> lines;
    const auto* e1 = as_circle(g1);
    const auto* e2 = as_circle(g2);
    if (e1 && e2) {
        for (const auto& t : common_tangents(*e1, *e2, tol))
            lines.push_back(t.line);
    } else if (e1 || e2) {
        const ECircle& e = e1 ? *e1 : *e2;
        const PlaneLine& l = e1 ? std::get<PlaneLine>(g2) : std::get<PlaneLine>(g1);
        double h = dot(l.normal, e.center);
        lines.push_back({l.normal, h - e.radius});
        lines.push_back({l.normal, h + e.radius});
    }
    std::vector<ThroughPointSolution> out;
    std::vector<GeneralizedCircle> seen;
    for (const auto& t : lines) {
        GeneralizedCircle s = apply_inversive_map(inv, t, tol);
        bool dup = false;
        for (const auto& o : seen)
            dup = dup || same_object(o, s, 1e-9);
        if (dup)
            continue;
        seen.push_back(s);
        auto kind_of = [&](const GeneralizedCircle& k) {
            auto cs = contacts(s, k);
            if (cs.empty())
                return ContactKind::External;
            return std::min_element(cs.begin(), cs.end(), [](const Contact& a, const Contact& b) {
                       return a.residual < b.residual;
                   })->kind;
        };
        out.push_back({s, kind_of(k1), kind_of(k2)});
    }
    return out;
}

ECircle apollonius_through_point(Vec2 P, const ECircle& k1, const ECircle& k2, Orientation o1,
                                 Orientation o2, const Tolerance& tol) {
    auto ok = [](Orientation o, ContactKind k) {
        return o == Orientation::Any || (o == Orientation::External) == (k == ContactKind::External);
    };
    std::optional<ECircle> best;
    for (const auto& s : apollonius_through_point_all(P, k1, k2, tol)) {
        const auto* c = as_circle(s.circle);
        if (!c || !ok(o1, s.kind1) || !ok(o2, s.kind2))
            continue;
        if (!best || c->radius < best->radius)
            best = *c;
    }
    if (!best)
        throw Error(ErrorCode::NoSolutionForConstraints, "no circle through the point with these contacts");
    return *best;
}

}  // namespace malfatti
