#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "malfatti/constructions.hpp"
#include "malfatti/error.hpp"

namespace malfatti {

using lorentz::HCircle;
using lorentz::LVec;

namespace {

// ---- geometry policies for the triangle construction -------------------------

struct Hyperbolic {
    using Point = LVec;
    using Line = LVec;
    using Circle = HCircle;

    static Line through(const Point& a, const Point& b) { return lorentz::line_through(a, b); }
    static Line orient(const Line& l, const Point& p) { return lorentz::oriented(l, p); }
    static double height(const Line& l, const Point& p) { return std::asinh(lorentz::ldot(p, l)); }
    static Line bisector(const Point& v, const Point& p1, const Point& p2) {
        Line l1 = orient(through(v, p1), p2);
        Line l2 = orient(through(v, p2), p1);
        return lorentz::unit_space(l1 - l2);
    }
    static std::optional<Circle> incircle(const Line& a, const Line& b, const Line& c) {
        return lorentz::incircle(a, b, c);
    }
    static std::vector<Line> inner_tangents(const Circle& c1, const Circle& c2) {
        return lorentz::tangent_lines(c1, c2, TangentKind::Inner);
    }
    static double line_gap(const Line& a, const Line& b) {
        return std::min(std::sqrt(norm2({a.x - b.x, a.y - b.y}) + (a.t - b.t) * (a.t - b.t)),
                        std::sqrt(norm2({a.x + b.x, a.y + b.y}) + (a.t + b.t) * (a.t + b.t)));
    }
    static std::optional<Point> meet(const Line& a, const Line& b) { return lorentz::meet(a, b); }
    static Point foot(const Circle& c, const Line& l) { return lorentz::foot(c.center, l); }
    static double distance(const Point& a, const Point& b) { return lorentz::distance(a, b); }
    static Point contact(const Circle& a, const Circle& b) {
        double D = distance(a.center, b.center);
        LVec u = lorentz::direction(a.center, b.center);
        return lorentz::along(a.center, u, a.radius + 0.5 * (D - a.radius - b.radius));
    }
};

struct Euclidean {
    using Point = Vec2;
    using Line = PlaneLine;
    using Circle = ECircle;

    static Line through(const Point& a, const Point& b) { return PlaneLine::through(a, b); }
    static Line orient(const Line& l, const Point& p) {
        return l.signed_distance(p) < 0.0 ? l.flipped() : l;
    }
    static double height(const Line& l, const Point& p) { return l.signed_distance(p); }
    static Line bisector(const Point& v, const Point& p1, const Point& p2) {
        Line l1 = orient(through(v, p1), p2);
        Line l2 = orient(through(v, p2), p1);
        return PlaneLine::make(l1.normal - l2.normal, l1.offset - l2.offset);
    }
    static std::optional<Circle> incircle(const Line& a, const Line& b, const Line& c) {
        Eigen::Matrix3d M;
        M << a.normal.x, a.normal.y, -1.0, b.normal.x, b.normal.y, -1.0, c.normal.x, c.normal.y,
            -1.0;
        Eigen::Vector3d rhs(a.offset, b.offset, c.offset);
        Eigen::Vector3d s = M.colPivHouseholderQr().solve(rhs);
        if (!s.allFinite() || !(s(2) > 0.0))
            return std::nullopt;
        return ECircle{{s(0), s(1)}, s(2)};
    }
    static std::vector<Line> inner_tangents(const Circle& c1, const Circle& c2) {
        std::vector<Line> out;
        for (const auto& t : common_tangents(c1, c2))
            if (t.kind == TangentKind::Inner)
                out.push_back(orient(t.line, c1.center));
        return out;
    }
    static double line_gap(const Line& a, const Line& b) {
        return std::min(norm(a.normal - b.normal) + std::abs(a.offset - b.offset),
                        norm(a.normal + b.normal) + std::abs(a.offset + b.offset));
    }
    static std::optional<Point> meet(const Line& a, const Line& b) {
        auto p = intersect(a, b);
        if (p.empty())
            return std::nullopt;
        return p.front();
    }
    static Point foot(const Circle& c, const Line& l) { return l.foot(c.center); }
    static double distance(const Point& a, const Point& b) { return dist(a, b); }
    static Point contact(const Circle& a, const Circle& b) {
        double D = dist(a.center, b.center);
        Vec2 u = (b.center - a.center) / D;
        return a.center + u * (a.radius + 0.5 * (D - a.radius - b.radius));
    }
};

template <class G>
struct TriangleRun {
    using P = typename G::Point;
    using L = typename G::Line;
    using C = typename G::Circle;
    std::array<P, 3> V;
    std::array<L, 3> side, bis, tang;
    P O;
    std::array<C, 3> sub, m;
    std::array<P, 3> sub_foot;
    P K;
    double concurrency = 0.0;
    double foot_incidence = 0.0;
    std::array<double, 3> fourth{};
};

template <class G>
TriangleRun<G> run_triangle(const std::array<typename G::Point, 3>& V) {
    TriangleRun<G> r;
    r.V = V;
    auto nx = [](int i, int k) { return (i + k) % 3; };
    for (int i = 0; i < 3; ++i) {
        r.side[i] = G::orient(G::through(V[nx(i, 1)], V[nx(i, 2)]), V[i]);
        r.bis[i] = G::bisector(V[i], V[nx(i, 1)], V[nx(i, 2)]);
    }
    auto O = G::meet(r.bis[0], r.bis[1]);
    if (!O)
        throw Error(ErrorCode::ConcurrencyFailure, "bisectors do not meet");
    r.O = *O;
    // step 1: incircles of O V_{i+1} V_{i+2}
    for (int i = 0; i < 3; ++i) {
        auto c = G::incircle(r.side[i], G::orient(r.bis[nx(i, 1)], V[nx(i, 2)]),
                             G::orient(r.bis[nx(i, 2)], V[nx(i, 1)]));
        if (!c)
            throw Error(ErrorCode::NoBoundedRegion, "sub-triangle has no incircle");
        r.sub[i] = *c;
        r.sub_foot[i] = G::foot(*c, r.side[i]);
    }
    // step 2: the inner tangent of sub[i+1], sub[i+2] other than the bisector at V_i
    for (int i = 0; i < 3; ++i) {
        auto ts = G::inner_tangents(r.sub[nx(i, 1)], r.sub[nx(i, 2)]);
        if (ts.size() == 1)
            ts.push_back(ts.front());  // touching sub-incircles: both tangents are the bisector
        if (ts.size() != 2)
            throw Error(ErrorCode::ConcurrencyFailure, "sub-incircles have no inner tangents");
        r.tang[i] = G::line_gap(ts[0], r.bis[i]) > G::line_gap(ts[1], r.bis[i]) ? ts[0] : ts[1];
        r.foot_incidence =
            std::max(r.foot_incidence, std::abs(G::height(r.tang[i], r.sub_foot[i])));
    }
    std::array<typename G::Point, 3> meets;
    for (int i = 0; i < 3; ++i) {
        auto k = G::meet(r.tang[nx(i, 1)], r.tang[nx(i, 2)]);
        if (!k)
            throw Error(ErrorCode::ConcurrencyFailure, "internal tangents do not meet");
        meets[i] = *k;
    }
    r.K = meets[0];
    for (int i = 0; i < 3; ++i)
        r.concurrency = std::max(r.concurrency, std::abs(G::height(r.tang[i], meets[i])));
    // step 3: incircles of the quadrilaterals at each vertex
    for (int i = 0; i < 3; ++i) {
        auto c = G::incircle(r.side[nx(i, 1)], r.side[nx(i, 2)], G::orient(r.tang[nx(i, 1)], V[i]));
        if (!c)
            throw Error(ErrorCode::NoBoundedRegion, "quadrilateral has no incircle");
        r.m[i] = *c;
        r.fourth[i] = std::abs(std::abs(G::height(r.tang[nx(i, 2)], c->center)) - c->radius);
    }
    return r;
}

GeneralizedCircle hcarrier(const LVec& N) { return lorentz::carrier_of_line(N); }
Vec2 hpoint(const LVec& X) { return lorentz::to_disk(X); }

std::string idx(const char* p, int i) { return std::string(p) + std::to_string(i + 1); }

Contact best_contact(const GeneralizedCircle& a, const GeneralizedCircle& b) {
    auto cs = contacts(a, b);
    if (cs.empty())
        return {{0.0, 0.0}, {1.0, 0.0}, INFINITY, ContactKind::External};
    return *std::min_element(cs.begin(), cs.end(),
                             [](const Contact& x, const Contact& y) { return x.residual < y.residual; });
}

GeneralizedCircle reference_of(const InversiveMap& m) {
    if (const auto* inv = std::get_if<Inversion>(&m))
        return ECircle{inv->center, std::sqrt(inv->power)};
    return std::get<Reflection>(m).axis;
}

// whether the curve g lies in the closed inside (or outside) region of h
bool curve_in_region(const GeneralizedCircle& g, const GeneralizedCircle& h, bool inside,
                     double tol) {
    const auto* hc = as_circle(h);
    const auto* gc = as_circle(g);
    if (hc && gc) {
        double d = dist(gc->center, hc->center);
        if (inside)
            return d + gc->radius <= hc->radius + tol;
        return d >= hc->radius + gc->radius - tol || gc->radius >= d + hc->radius - tol;
    }
    if (hc) {
        if (inside)
            return false;
        return distance_to(PlaneLine(std::get<PlaneLine>(g)), hc->center) >= hc->radius - tol;
    }
    const auto& hl = std::get<PlaneLine>(h);
    if (gc) {
        double s = hl.signed_distance(gc->center);
        return inside ? s + gc->radius <= tol : s - gc->radius >= -tol;
    }
    const auto& gl = std::get<PlaneLine>(g);
    if (std::abs(cross(gl.normal, hl.normal)) > 1e-12)
        return false;
    double s = hl.signed_distance(gl.point());
    return inside ? s <= tol : s >= -tol;
}

// one of a, b inside s and the other outside (opposite sides for a line)
bool separates(const ThroughPointSolution& s, const GeneralizedCircle& a, const GeneralizedCircle& b) {
    if (const auto* l = as_line(s.circle)) {
        const auto* ea = as_circle(a);
        const auto* eb = as_circle(b);
        return ea && eb && l->signed_distance(ea->center) * l->signed_distance(eb->center) < 0.0;
    }
    return s.kind1 != s.kind2;
}

double radius_key(const GeneralizedCircle& g) {
    const auto* c = as_circle(g);
    return c ? c->radius : INFINITY;
}

}  // namespace

// ---- systems -------------------------------------------------------------------

double MalfattiCycleSystem::max_residual() const {
    double r = 0.0;
    for (const auto& c : certificates)
        r = std::max(r, c.cert.residual);
    return r;
}

bool MalfattiCycleSystem::all_valid() const {
    return !certificates.empty() &&
           std::all_of(certificates.begin(), certificates.end(), [](const auto& c) { return c.valid; });
}

void certify(MalfattiCycleSystem& sys, double tol) {
    sys.certificates.clear();
    auto one = [&](const Cycle& a, const Cycle& b, std::string na, std::string nb) {
        NamedCertificate nc{std::move(na), std::move(nb), {}, false};
        if (auto c = cycles_touching(a, b, tol)) {
            nc.cert = *c;
            nc.valid = true;
        } else {
            // best effort over all branch pairs, for reporting
            double best = INFINITY;
            for (const auto& [b1, g1] : branches(a))
                for (const auto& [b2, g2] : branches(b))
                    for (const auto& k : contacts(g1, g2))
                        if (k.residual < best) {
                            best = k.residual;
                            nc.cert = {k.point, normalized(k.direction), k.residual, {b1, b2}};
                        }
            if (!std::isfinite(best))
                nc.cert.residual = INFINITY;
        }
        sys.certificates.push_back(nc);
    };
    for (int j = 0; j < 3; ++j) {
        int i = (j + 1) % 3, k = (j + 2) % 3;
        one(sys.cycles[j], sys.given[std::min(i, k)], idx("m", j), idx("c", std::min(i, k)));
        one(sys.cycles[j], sys.given[std::max(i, k)], idx("m", j), idx("c", std::max(i, k)));
    }
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            one(sys.cycles[a], sys.cycles[b], idx("m", a), idx("m", b));
}

Cycle lift_carrier(const GeneralizedCircle& g, double tol) {
    if (classify_carrier(g, tol))
        return build_cycle(g, tol);
    GeneralizedCircle img = apply_inversive_map(model_inversion(), g);
    if (classify_carrier(img, tol))
        return build_cycle(img, tol);
    throw Error(ErrorCode::CarrierOutsideModel, "carrier and its inverse miss the model disk");
}

namespace {

MalfattiCycleSystem sides_system(const HTriangle& t) {
    MalfattiCycleSystem sys;
    LVec V[3] = {lorentz::from_disk(t.A), lorentz::from_disk(t.B), lorentz::from_disk(t.C)};
    for (int i = 0; i < 3; ++i)
        sys.given[i] = geodesic_cycle(lorentz::line_through(V[(i + 1) % 3], V[(i + 2) % 3]));
    return sys;
}

}  // namespace

MalfattiCycleSystem triangle_system(const HTriangle& t, const std::array<Cycle, 3>& circles,
                                    const Tolerance& tol) {
    MalfattiCycleSystem sys = sides_system(t);
    sys.route = "triangle";
    sys.cycles = circles;
    for (int i = 0; i < 3; ++i)
        sys.carriers[i] = circles[i].carrier;
    certify(sys, tol.certificate);
    return sys;
}

MalfattiCycleSystem steiner_triangle(const HTriangle& t, const Tolerance& tol) {
    std::array<LVec, 3> V = {lorentz::from_disk(t.A), lorentz::from_disk(t.B),
                             lorentz::from_disk(t.C)};
    TriangleRun<Hyperbolic> r = run_triangle<Hyperbolic>(V);
    if (!(r.concurrency < 1e-8))
        throw Error(ErrorCode::ConcurrencyFailure, "second internal tangents do not concur");

    MalfattiCycleSystem sys = sides_system(t);
    sys.route = "triangle";
    for (int i = 0; i < 3; ++i) {
        sys.cycles[i] = cycle_of(r.m[i]);
        sys.carriers[i] = sys.cycles[i].carrier;
    }
    TriangleTrace tr;
    tr.vertex = V;
    tr.side = r.side;
    tr.bisector = r.bis;
    tr.incenter = r.O;
    tr.sub = r.sub;
    tr.tangent = r.tang;
    tr.sub_foot = r.sub_foot;
    tr.K = r.K;
    tr.concurrency = r.concurrency;
    tr.fourth_residual = r.fourth;
    sys.triangle = tr;

    const char* vn[3] = {"A", "B", "C"};
    const char* tn[3] = {"HI", "DE", "FG"};
    const char* fn[3] = {"I", "E", "G"};
    for (int i = 0; i < 3; ++i)
        sys.trace.add(std::string("bisector ") + vn[i], hcarrier(r.bis[i]));
    sys.trace.add("incenter O", hpoint(r.O));
    for (int i = 0; i < 3; ++i)
        sys.trace.add(std::string("sub-incircle c'") + vn[i], cycle_of(r.sub[i]).carrier);
    for (int i = 0; i < 3; ++i)
        sys.trace.add(std::string("tangent ") + tn[i], hcarrier(r.tang[i]), r.foot_incidence);
    for (int i = 0; i < 3; ++i)
        sys.trace.add(std::string("point ") + fn[i], hpoint(r.sub_foot[i]));
    sys.trace.add("point K", hpoint(r.K), r.concurrency);
    for (int i = 0; i < 3; ++i)
        sys.trace.add(std::string("fourth tangency m") + std::to_string(i + 1), hcarrier(r.tang[(i + 2) % 3]),
                      r.fourth[i]);
    certify(sys, tol.certificate);
    return sys;
}

std::array<ECircle, 3> euclidean_steiner_triangle(Vec2 A, Vec2 B, Vec2 C, SteinerTrace* trace) {
    TriangleRun<Euclidean> r = run_triangle<Euclidean>({A, B, C});
    if (!(r.concurrency < 1e-8 * std::max(1.0, dist(A, B))))
        throw Error(ErrorCode::ConcurrencyFailure, "second internal tangents do not concur");
    if (trace) {
        const char* vn[3] = {"A", "B", "C"};
        const char* tn[3] = {"HI", "DE", "FG"};
        for (int i = 0; i < 3; ++i)
            trace->add(std::string("vertex ") + vn[i], r.V[i]);
        for (int i = 0; i < 3; ++i)
            trace->add(std::string("bisector ") + vn[i], r.bis[i]);
        for (int i = 0; i < 3; ++i)
            trace->add(std::string("sub-incircle c'") + vn[i], r.sub[i]);
        for (int i = 0; i < 3; ++i)
            trace->add(std::string("tangent ") + tn[i], r.tang[i], r.foot_incidence);
        trace->add("point K", r.K, r.concurrency);
    }
    return r.m;
}

std::array<GeneralizedCircle, 3> euclidean_steiner_circles(const std::array<ECircle, 3>& c,
                                                           SteinerTrace* trace,
                                                           const Tolerance& tol) {
    const double side_tol = 1e-7;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (dist(c[i].center, c[j].center) <= c[i].radius + c[j].radius + tol.kernel)
                throw Error(ErrorCode::OverlappingInteriors, "given carriers overlap");

    // step 1
    GeneralizedCircle cc[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            InversiveMap m = antisimilitude_map(c[i], c[j], tol);
            GeneralizedCircle ref = reference_of(m);
            double swap = 0.0;
            for (Vec2 p : sample(c[i], 8))
                swap = std::max(swap, distance_to(c[j], apply_inversive_map(m, p)));
            bool separated = true;
            for (Vec2 p : sample(c[i], 16))
                separated = separated && side_value(ref, p) * side_value(ref, c[j].center) < 0.0;
            for (Vec2 p : sample(c[j], 16))
                separated = separated && side_value(ref, p) * side_value(ref, c[i].center) < 0.0;
            if (!separated)
                throw Error(ErrorCode::DegenerateConfiguration, "reference cycle does not separate");
            cc[i][j] = cc[j][i] = ref;
            if (trace)
                trace->add(idx("c", i) + idx("", j).insert(0, ","), ref, swap);
        }

    // step 2
    std::array<std::vector<GeneralizedCircle>, 3> K;
    for (int j = 0; j < 3; ++j) {
        int i = (j + 1) % 3, k = (j + 2) % 3;
        for (const auto& s : apollonius_all({cc[i][j], cc[j][k], c[j]}, tol)) {
            Contact ct = best_contact(s, c[j]);
            if (ct.kind != ContactKind::External || ct.residual > 1e-8)
                continue;
            bool good = true;
            for (const auto* o : {&cc[i][j], &cc[j][k]}) {
                bool want_inside = side_value(*o, c[j].center) < 0.0;
                good = good && curve_in_region(s, *o, want_inside, side_tol);
            }
            if (good)
                K[j].push_back(s);
        }
        std::sort(K[j].begin(), K[j].end(),
                  [](const auto& a, const auto& b) { return radius_key(a) < radius_key(b); });
        if (K[j].empty())
            throw Error(ErrorCode::SelectionExhausted, "no auxiliary cycle passes the step-2 filters");
    }

    struct System {
        std::array<GeneralizedCircle, 3> m;
        std::array<int, 3> ks;
        std::array<Vec2, 3> P;
        std::array<GeneralizedCircle, 3> l;  // l_{12}, l_{23}, l_{13} as used by m
        double key;
    };
    std::optional<System> best;

    for (size_t a = 0; a < K[0].size(); ++a)
        for (size_t b = 0; b < K[1].size(); ++b)
            for (size_t e = 0; e < K[2].size(); ++e) {
                std::array<GeneralizedCircle, 3> k{K[0][a], K[1][b], K[2][e]};
                std::array<Vec2, 3> P;
                for (int j = 0; j < 3; ++j)
                    P[j] = best_contact(k[j], c[j]).point;
                // step 3
                std::vector<GeneralizedCircle> Lc[3][3];
                for (int i = 0; i < 3; ++i)
                    for (int j = i + 1; j < 3; ++j) {
                        int o = 3 - i - j;
                        for (const auto& s : apollonius_through_point_all(P[o], k[i], k[j], tol))
                            if (separates(s, k[i], k[j]))
                                Lc[i][j].push_back(s.circle);
                        Lc[j][i] = Lc[i][j];
                    }
                // step 4
                std::array<std::vector<std::pair<GeneralizedCircle, std::array<GeneralizedCircle, 2>>>, 3> M;
                for (int j = 0; j < 3; ++j) {
                    int i = (j + 1) % 3, kk = (j + 2) % 3;
                    for (const auto& la : Lc[i][j])
                        for (const auto& lb : Lc[j][kk])
                            for (const auto& s : apollonius_all({la, lb, c[i]}, tol)) {
                                Contact ci = best_contact(s, c[i]);
                                Contact ck = best_contact(s, c[kk]);
                                if (ci.kind != ContactKind::External || ci.residual > 1e-8)
                                    continue;
                                if (ck.kind != ContactKind::External || ck.residual > 1e-8)
                                    continue;
                                M[j].push_back({s, {la, lb}});
                            }
                }
                for (const auto& m0 : M[0])
                    for (const auto& m1 : M[1])
                        for (const auto& m2 : M[2]) {
                            std::array<GeneralizedCircle, 3> ms{m0.first, m1.first, m2.first};
                            bool ok = true;
                            for (int u = 0; u < 3 && ok; ++u)
                                for (int v = u + 1; v < 3 && ok; ++v) {
                                    Contact ct = best_contact(ms[u], ms[v]);
                                    ok = ct.kind == ContactKind::External && ct.residual < 1e-8;
                                }
                            if (!ok)
                                continue;
                            double key = std::max({radius_key(ms[0]), radius_key(ms[1]), radius_key(ms[2])});
                            if (!best || key < best->key - 1e-12)
                                best = System{ms, {int(a), int(b), int(e)}, P,
                                              {m0.second[0], m1.second[0], m2.second[0]}, key};
                        }
            }
    if (!best)
        throw Error(ErrorCode::SelectionExhausted, "no Malfatti system passes the side filters");

    if (trace) {
        for (int j = 0; j < 3; ++j)
            trace->add(idx("k", j), K[j][best->ks[j]], best_contact(K[j][best->ks[j]], c[j]).residual);
        for (int j = 0; j < 3; ++j)
            trace->add(idx("P", j), best->P[j]);
        const char* ln[3] = {"l2,1", "l3,2", "l1,3"};
        for (int j = 0; j < 3; ++j)
            trace->add(ln[j], best->l[j]);
    }
    return best->m;
}

MalfattiCycleSystem steiner_cycles(const Cycle& c1, const Cycle& c2, const Cycle& c3,
                                   const Tolerance& tol) {
    MalfattiCycleSystem sys;
    sys.given = {c1, c2, c3};
    std::array<GeneralizedCircle, 3> g{c1.carrier, c2.carrier, c3.carrier};
    int lines = is_line(g[0]) + is_line(g[1]) + is_line(g[2]);

    if (lines == 3) {
        sys.route = "carrier-triangle";
        std::array<Vec2, 3> V;
        for (int i = 0; i < 3; ++i) {
            auto p = intersect(g[(i + 1) % 3], g[(i + 2) % 3], tol);
            if (p.size() != 1)
                throw Error(ErrorCode::DegenerateConfiguration, "carrier lines must pairwise meet");
            V[i] = p.front();
        }
        if (std::abs(cross(V[1] - V[0], V[2] - V[0])) <= tol.kernel)
            throw Error(ErrorCode::DegenerateConfiguration, "carrier lines are concurrent");
        auto m = euclidean_steiner_triangle(V[0], V[1], V[2], &sys.trace);
        for (int i = 0; i < 3; ++i)
            sys.carriers[i] = m[i];
    } else {
        sys.route = "cycles";
        // interiors: disks, and for lines the half-plane away from the other carriers
        std::array<GeneralizedCircle, 3> oriented = g;
        for (int i = 0; i < 3; ++i) {
            auto* l = std::get_if<PlaneLine>(&oriented[i]);
            if (!l)
                continue;
            double lo = INFINITY, hi = -INFINITY;
            for (int j = 0; j < 3; ++j) {
                if (j == i)
                    continue;
                std::vector<Vec2> pts = sample(g[j], 32);
                if (const auto* e = as_circle(g[j]))
                    pts.push_back(e->center);
                for (Vec2 p : pts) {
                    lo = std::min(lo, l->signed_distance(p));
                    hi = std::max(hi, l->signed_distance(p));
                }
            }
            if (lo < -tol.kernel && hi > tol.kernel)
                throw Error(ErrorCode::OverlappingInteriors, "line carrier splits the other carriers");
            if (hi <= tol.kernel)
                *l = l->flipped();  // others on the positive side, interior negative
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const auto* a = as_circle(g[i]);
                const auto* b = as_circle(g[j]);
                if (a && b && dist(a->center, b->center) <= a->radius + b->radius + tol.kernel)
                    throw Error(ErrorCode::OverlappingInteriors, "given carriers overlap");
                if (is_line(g[i]) && is_line(g[j])) {
                    const auto& la = std::get<PlaneLine>(oriented[i]);
                    const auto& lb = std::get<PlaneLine>(oriented[j]);
                    if (std::abs(cross(la.normal, lb.normal)) > 1e-12 || dot(la.normal, lb.normal) > 0.0)
                        throw Error(ErrorCode::OverlappingInteriors, "half-plane interiors overlap");
                }
            }
        std::optional<InversiveMap> norm_map;
        std::array<ECircle, 3> work;
        if (lines == 0) {
            for (int i = 0; i < 3; ++i)
                work[i] = std::get<ECircle>(g[i]);
        } else {
            // a point of the common exterior, as far from the carriers as the grid allows
            std::optional<Vec2> Z;
            double best = 0.0;
            for (int ix = -12; ix <= 12; ++ix)
                for (int iy = -12; iy <= 12; ++iy) {
                    Vec2 p{0.25 * ix + 0.0137, 0.25 * iy + 0.0071};
                    bool outside = true;
                    double clearance = INFINITY;
                    for (int i = 0; i < 3; ++i) {
                        double sv = side_value(oriented[i], p);
                        outside = outside && sv > 0.0;
                        clearance = std::min(clearance, std::abs(sv));
                    }
                    clearance = std::min(clearance, 1.0 / (1.0 + norm(p)));
                    if (outside && clearance > best) {
                        best = clearance;
                        Z = p;
                    }
                }
            if (!Z)
                throw Error(ErrorCode::OverlappingInteriors, "no common exterior point");
            norm_map = Inversion{*Z, 1.0};
            for (int i = 0; i < 3; ++i)
                work[i] = std::get<ECircle>(apply_inversive_map(*norm_map, g[i], tol));
        }
        SteinerTrace local;
        auto m = euclidean_steiner_circles(work, &local, tol);
        for (auto& e : local.entries) {
            if (norm_map) {
                if (auto* p = std::get_if<Vec2>(&e.object))
                    *p = apply_inversive_map(*norm_map, *p);
                else
                    e.object = apply_inversive_map(*norm_map, std::get<GeneralizedCircle>(e.object), tol);
            }
            sys.trace.entries.push_back(e);
        }
        for (int i = 0; i < 3; ++i)
            sys.carriers[i] = norm_map ? apply_inversive_map(*norm_map, m[i], tol) : m[i];
    }

    for (int j = 0; j < 3; ++j) {
        int i = (j + 1) % 3, k = (j + 2) % 3;
        for (int o : {std::min(i, k), std::max(i, k)}) {
            Contact ct = best_contact(sys.carriers[j], g[o]);
            sys.trace.add("carrier contact " + idx("m", j) + "~" + idx("c", o), ct.point, ct.residual);
        }
        sys.cycles[j] = lift_carrier(sys.carriers[j], tol.kernel);
    }
    certify(sys, tol.certificate);
    return sys;
}

}  // namespace malfatti
