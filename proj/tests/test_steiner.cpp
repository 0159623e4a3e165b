#include <set>

#include <gtest/gtest.h>

#include "malfatti/constructions.hpp"
#include "malfatti/error.hpp"
#include "malfatti/schellbach.hpp"
#include "support.hpp"

using namespace malfatti;
using testing_support::Rng;

namespace {

double worst(const VerificationReport& r, const std::string& prefix) {
    double w = 0.0;
    for (const auto& n : r.residuals)
        if (n.name.rfind(prefix, 0) == 0)
            w = std::max(w, n.value);
    return w;
}

int count(const VerificationReport& r, const std::string& prefix) {
    int k = 0;
    for (const auto& n : r.residuals)
        k += n.name.rfind(prefix, 0) == 0;
    return k;
}

// three chords at distance rho from the origin bounding a regular triangle
std::array<Cycle, 3> chord_triangle(double rho) {
    std::array<Cycle, 3> out;
    for (int i = 0; i < 3; ++i) {
        double a = M_PI / 2 + 2 * M_PI * i / 3;
        out[i] = build_cycle(PlaneLine::make({std::cos(a), std::sin(a)}, rho));
    }
    return out;
}

// direct check that the Euclidean carriers touch externally
double external_gap(const GeneralizedCircle& a, const GeneralizedCircle& b) {
    const ECircle* ca = as_circle(a);
    const ECircle* cb = as_circle(b);
    if (ca && cb)
        return std::abs(dist(ca->center, cb->center) - ca->radius - cb->radius);
    const ECircle* c = ca ? ca : cb;
    const PlaneLine& l = std::get<PlaneLine>(ca ? b : a);
    return std::abs(std::abs(l.signed_distance(c->center)) - c->radius);
}

}  // namespace

TEST(SteinerTriangle, AgreesWithAnalyticCircles) {
    Rng rng(51);
    int chains = 0;
    for (int k = 0; k < 100; ++k) {
        auto s = rng.triangle(0.1, 3.0, 0.02);
        HTriangle t = embed_triangle(s.a, s.b, s.c);
        auto sys = steiner_triangle(t);
        auto ana = analytic_circles(t, solve(s));
        for (int i = 0; i < 3; ++i) {
            auto a = hyperbolic_circle(ana[i]), b = hyperbolic_circle(sys.cycles[i]);
            EXPECT_LT(lorentz::distance(a.center, b.center), 1e-7) << "case " << k;
            EXPECT_NEAR(a.radius, b.radius, 1e-7);
            const ECircle& ea = std::get<ECircle>(ana[i].carrier);
            const ECircle& eb = std::get<ECircle>(sys.cycles[i].carrier);
            EXPECT_LT(dist(ea.center, eb.center), 1e-7);
            EXPECT_NEAR(ea.radius, eb.radius, 1e-7);
        }
        EXPECT_EQ(sys.certificates.size(), 9u);
        EXPECT_TRUE(sys.all_valid());
        EXPECT_LT(sys.max_residual(), 1e-8);
        ASSERT_TRUE(sys.triangle);
        EXPECT_LT(sys.triangle->concurrency, 1e-8);

        auto rep = hart_verify(sys);
        EXPECT_LT(worst(rep, "concurrency"), 1e-8);
        EXPECT_LT(worst(rep, "hart chain"), 1e-8);
        EXPECT_LT(worst(rep, "lemma1"), 1e-9);
        EXPECT_LT(worst(rep, "lemma2"), 1e-9);
        EXPECT_LT(worst(rep, "tangency"), 1e-8);
        chains += count(rep, "hart chain") / 2;
    }
    EXPECT_GE(chains, 100);  // at least one side per triangle carries the chain
}

TEST(SteinerTriangle, EquilateralSymmetry) {
    HTriangle t = embed_triangle(1.0, 1.0, 1.0);
    auto sys = steiner_triangle(t);
    double r0 = hyperbolic_circle(sys.cycles[0]).radius;
    for (const auto& c : sys.cycles)
        EXPECT_NEAR(hyperbolic_circle(c).radius, r0, 1e-12);
    auto sol = solve({1, 1, 1});
    EXPECT_NEAR(sol.x, 0.332987385509335, 1e-13);
    auto rep = hart_verify(sys);
    EXPECT_LT(rep.max_residual(), 1e-12);
}

TEST(SteinerTriangle, SubIncirclesSeeTheBisectorsAsTangents) {
    HTriangle t = embed_triangle(1.2, 0.9, 1.5);
    auto sys = steiner_triangle(t);
    const auto& tr = *sys.triangle;
    // the bisector at V_i is the other inner tangent of sub[i+1] and sub[i+2]
    for (int i = 0; i < 3; ++i)
        for (int j : {1, 2}) {
            const auto& c = tr.sub[(i + j) % 3];
            EXPECT_NEAR(std::abs(std::asinh(lorentz::ldot(c.center, tr.bisector[i]))), c.radius, 1e-9);
            EXPECT_NEAR(std::abs(std::asinh(lorentz::ldot(c.center, tr.tangent[i]))), c.radius, 1e-9);
        }
}

TEST(SteinerTriangle, HartDetectsPerturbedCircle) {
    HTriangle t = embed_triangle(1.0, 1.3, 1.7);
    auto sys = steiner_triangle(t);
    auto h = hyperbolic_circle(sys.cycles[0]);
    sys.cycles[0] = cycle_of({h.center, h.radius + 1e-3});
    EXPECT_GT(hart_verify(sys).max_residual(), 1e-4);
    certify(sys, 1e-9);
    EXPECT_FALSE(sys.all_valid() && sys.max_residual() <= 1e-9);
}

TEST(EuclideanSteiner, TriangleMatchesNewtonOracle) {
    Rng rng(52);
    for (int k = 0; k < 100; ++k) {
        Vec2 A = rng.point(-2, 2), B = rng.point(-2, 2), C = rng.point(-2, 2);
        double a = dist(B, C), b = dist(C, A), c = dist(A, B);
        if (std::min({b + c - a, c + a - b, a + b - c}) < 0.05 * (a + b + c))
            continue;
        if (cross(B - A, C - A) < 0)
            std::swap(B, C), std::swap(b, c);
        SteinerTrace trace;
        auto m = euclidean_steiner_triangle(A, B, C, &trace);
        EXPECT_FALSE(trace.entries.empty());
        auto tl = testing_support::euclidean_malfatti(a, b, c);
        Vec2 V[3] = {A, B, C};
        for (int i = 0; i < 3; ++i) {
            double t = std::sqrt(norm2(m[i].center - V[i]) - m[i].radius * m[i].radius);
            EXPECT_NEAR(t, tl[i], 1e-9) << "case " << k;
            EXPECT_NEAR(dist(m[i].center, m[(i + 1) % 3].center), m[i].radius + m[(i + 1) % 3].radius, 1e-9);
        }
    }
}

TEST(SteinerCycles, SymmetricCircles) {
    std::array<Cycle, 3> c;
    for (int i = 0; i < 3; ++i) {
        double a = M_PI / 2 + 2 * M_PI * i / 3;
        c[i] = build_cycle(ECircle{Vec2{std::cos(a), std::sin(a)} * 0.5, 0.2});
    }
    auto sys = steiner_cycles(c[0], c[1], c[2]);
    EXPECT_TRUE(sys.all_valid());
    EXPECT_LT(sys.max_residual(), 1e-9);
    double r0 = std::get<ECircle>(sys.cycles[0].carrier).radius;
    for (const auto& m : sys.cycles)
        EXPECT_NEAR(std::get<ECircle>(m.carrier).radius, r0, 1e-9);
    auto rep = hart_verify(sys);
    EXPECT_FALSE(sys.triangle);
    EXPECT_LT(rep.max_residual(), 1e-9);
}

TEST(SteinerCycles, CertifiedTouchingsHoldDirectly) {
    Rng rng(53);
    int solved = 0, exhausted = 0;
    for (int k = 0; k < 200 && solved < 20; ++k) {
        std::array<ECircle, 3> e;
        for (auto& ci : e) {
            ci.center = rng.in_disk(0.6);
            ci.radius = rng.uniform(0.05, 0.25);
        }
        bool ok = true;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                ok = ok && dist(e[i].center, e[j].center) > e[i].radius + e[j].radius + 0.05;
        if (!ok)
            continue;
        try {
            auto sys = steiner_cycles(build_cycle(e[0]), build_cycle(e[1]), build_cycle(e[2]));
            ++solved;
            EXPECT_TRUE(sys.all_valid());
            for (int j = 0; j < 3; ++j) {
                EXPECT_LT(external_gap(sys.carriers[j], e[(j + 1) % 3]), 1e-8);
                EXPECT_LT(external_gap(sys.carriers[j], e[(j + 2) % 3]), 1e-8);
                EXPECT_LT(external_gap(sys.carriers[j], sys.carriers[(j + 1) % 3]), 1e-8);
            }
        } catch (const Error& err) {
            EXPECT_EQ(err.code(), ErrorCode::SelectionExhausted);
            ++exhausted;
        }
    }
    EXPECT_GE(solved, 5);
}

TEST(SteinerCycles, ClusteredCirclesBehaveEuclidean) {
    // tiny circles deep inside: the lifted system is the Euclidean one
    const Vec2 p{0.2, -0.1};
    const double eps = 1e-3;
    std::array<ECircle, 3> e{ECircle{p + Vec2{0, 1} * eps, 0.3 * eps},
                             ECircle{p + Vec2{-0.9, -0.5} * eps, 0.25 * eps},
                             ECircle{p + Vec2{0.85, -0.45} * eps, 0.35 * eps}};
    auto sys = steiner_cycles(build_cycle(e[0]), build_cycle(e[1]), build_cycle(e[2]));
    auto euc = euclidean_steiner_circles(e);
    for (int i = 0; i < 3; ++i) {
        const auto& a = std::get<ECircle>(sys.cycles[i].carrier);
        const auto& b = std::get<ECircle>(euc[i]);
        EXPECT_LT(dist(a.center, b.center), 1e-12);
        EXPECT_NEAR(a.radius, b.radius, 1e-12);
        EXPECT_EQ(sys.cycles[i].kind, CycleKind::HyperbolicCircle);
    }
}

TEST(SteinerCycles, ChordTriangleTouchesOutsideTheModel) {
    auto g = chord_triangle(0.9);
    auto sys = steiner_cycles(g[0], g[1], g[2]);
    EXPECT_EQ(sys.route, "carrier-triangle");
    // the Euclidean Malfatti circles of the carriers touch the carriers beyond the model circle
    int outside = 0;
    for (int j = 0; j < 3; ++j)
        for (int k : {1, 2}) {
            const auto& m = std::get<ECircle>(sys.carriers[j]);
            const auto& l = std::get<PlaneLine>(g[(j + k) % 3].carrier);
            Vec2 p = l.foot(m.center);
            EXPECT_NEAR(std::abs(l.signed_distance(m.center)), m.radius, 1e-10);
            outside += norm(p) > 1.0;
        }
    EXPECT_EQ(outside, 6);
    EXPECT_EQ(sys.certificates.size(), 9u);
    EXPECT_TRUE(sys.all_valid());
    EXPECT_LT(sys.max_residual(), 1e-9);
    int second = 0;
    for (const auto& c : sys.certificates) {
        EXPECT_LT(norm(c.cert.point), 1.0);
        second += c.cert.branch_tags[0] == Branch::Second || c.cert.branch_tags[1] == Branch::Second;
    }
    EXPECT_GE(second, 1);
    for (const auto& m : sys.cycles)
        EXPECT_EQ(m.kind, CycleKind::Hypercycle);
    EXPECT_THROW(hart_verify(sys), Error);
}

TEST(SteinerCycles, MixedLineAndCircles) {
    Cycle a = build_cycle(ECircle{{-0.35, 0.3}, 0.3});
    Cycle b = build_cycle(ECircle{{0.4, 0.35}, 0.25});
    Cycle h = build_cycle(PlaneLine::make({0.0, -1.0}, 0.35));
    auto sys = steiner_cycles(a, b, h);
    EXPECT_TRUE(sys.all_valid());
    EXPECT_LT(sys.max_residual(), 1e-9);
}

TEST(LiftCarrier, Kinds) {
    EXPECT_EQ(lift_carrier(ECircle{{0.1, 0.1}, 0.2}).kind, CycleKind::HyperbolicCircle);
    Cycle cross = lift_carrier(ECircle{{0.0, 1.0}, 0.5});
    EXPECT_EQ(cross.kind, CycleKind::Hypercycle);
    EXPECT_TRUE(cross.second_branch);
    // a carrier missing the disk is brought inside by the model inversion
    Cycle outside = lift_carrier(ECircle{{3.0, 0.0}, 0.5});
    EXPECT_EQ(outside.kind, CycleKind::HyperbolicCircle);
    const auto& c = std::get<ECircle>(outside.carrier);
    EXPECT_LT(norm(c.center) + c.radius, 1.0);
}

TEST(Certify, NamesAndCount) {
    HTriangle t = embed_triangle(1.0, 1.3, 1.7);
    auto sys = steiner_triangle(t);
    ASSERT_EQ(sys.certificates.size(), 9u);
    EXPECT_EQ(sys.certificates[0].first, "m1");
    std::set<std::string> pairs;
    for (const auto& c : sys.certificates)
        pairs.insert(c.first + "~" + c.second);
    EXPECT_EQ(pairs.size(), 9u);
    EXPECT_TRUE(pairs.count("m1~m2"));
}

TEST(HartVerify, NotApplicableForHypercycles) {
    auto g = chord_triangle(0.9);
    auto sys = steiner_cycles(g[0], g[1], g[2]);
    try {
        hart_verify(sys);
        FAIL() << "expected NotApplicable";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotApplicable);
    }
}
