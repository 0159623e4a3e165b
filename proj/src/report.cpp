#include "malfatti/report.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "malfatti/error.hpp"

namespace malfatti {

std::string fmt(double v) {
    if (v == 0.0)
        v = 0.0;  // drops the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

namespace {

using malfatti::fmt;

std::string fmt(Vec2 p) { return "(" + malfatti::fmt(p.x) + "," + malfatti::fmt(p.y) + ")"; }

std::string fmt(const GeneralizedCircle& g) {
    if (const auto* c = as_circle(g))
        return "circle(" + fmt(c->center) + "," + malfatti::fmt(c->radius) + ")";
    const auto& l = std::get<PlaneLine>(g);
    return "line(" + fmt(l.normal) + "," + malfatti::fmt(l.offset) + ")";
}

std::string describe(const Cycle& c) {
    std::string s = std::string("kind=") + to_string(c.kind);
    switch (c.kind) {
    case CycleKind::HyperbolicCircle: {
        lorentz::HCircle h = hyperbolic_circle(c);
        s += " center=" + fmt(lorentz::to_disk(h.center)) + " radius=" + malfatti::fmt(h.radius);
        break;
    }
    case CycleKind::Paracycle:
        s += " ideal=" + fmt(normalized(std::get<ECircle>(c.carrier).center));
        break;
    case CycleKind::Hypercycle:
        s += " distance=" + malfatti::fmt(c.distance) + " base=" + fmt(*c.base_line);
        break;
    case CycleKind::Geodesic:
        break;
    }
    s += " carrier=" + fmt(c.carrier);
    if (c.second_branch)
        s += " second=" + fmt(*c.second_branch);
    return s;
}

bool within(const MalfattiCycleSystem& sys, double tol) {
    return sys.all_valid() && sys.max_residual() <= tol;
}

void emit_system(std::ostringstream& o, const std::string& tag, const MalfattiCycleSystem& sys) {
    o << tag << " route=" << sys.route << "\n";
    for (int i = 0; i < 3; ++i)
        o << tag << " m" << i + 1 << " " << describe(sys.cycles[i]) << "\n";
    for (const auto& c : sys.certificates)
        o << tag << " certificate " << c.first << "~" << c.second << " residual=" << fmt(c.cert.residual)
          << " point=" << fmt(c.cert.point) << " direction=" << fmt(c.cert.tangent_direction)
          << " branches=" << to_string(c.cert.branch_tags[0]) << "/" << to_string(c.cert.branch_tags[1])
          << " valid=" << (c.valid ? "yes" : "no") << "\n";
    o << tag << " max_residual=" << fmt(sys.max_residual()) << "\n";
}

}  // namespace

RunResult run(const Scene& scene, const RunOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    RunResult r;
    r.scene = scene;
    r.tol = scene.tol;
    if (opts.tol)
        r.tol.certificate = *opts.tol;
    const Tolerance& tol = r.tol;

    if (scene.mode == Scene::Mode::Triangle) {
        const auto& t = scene.sides;
        HTriangle tri = embed_triangle(t.a, t.b, t.c);
        r.schellbach = solve(t);
        r.analytic = triangle_system(tri, analytic_circles(tri, *r.schellbach), tol);
        MalfattiCycleSystem sys = steiner_triangle(tri, tol);
        for (int i = 0; i < 3; ++i) {
            auto a = hyperbolic_circle(r.analytic->cycles[i]);
            auto b = hyperbolic_circle(sys.cycles[i]);
            r.cross_method_delta = std::max({r.cross_method_delta, lorentz::distance(a.center, b.center),
                                             std::abs(a.radius - b.radius)});
        }
        r.system = sys;
    } else {
        const auto& c = scene.cycles;
        if (scene.candidates) {
            MalfattiCycleSystem sys;
            sys.given = {c[0].cycle, c[1].cycle, c[2].cycle};
            r.system = sys;
        } else {
            r.system = steiner_cycles(c[0].cycle, c[1].cycle, c[2].cycle, tol);
        }
    }
    if (scene.candidates) {
        MalfattiCycleSystem& sys = *r.system;
        sys.route = "candidate";
        for (int i = 0; i < 3; ++i) {
            sys.cycles[i] = (*scene.candidates)[i].cycle;
            sys.carriers[i] = sys.cycles[i].carrier;
        }
        certify(sys, tol.certificate);
    }

    try {
        r.hart = hart_verify(*r.system, tol.certificate);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotApplicable && e.code() != ErrorCode::DegenerateConfiguration)
            throw;
        r.hart_note = e.what();
    }

    if (opts.enumerate_apollonius) {
        const auto& g = r.system->given;
        std::array<GeneralizedCircle, 3> in{g[0].carrier, g[1].carrier, g[2].carrier};
        try {
            if (!is_line(in[0]) && !is_line(in[1]) && !is_line(in[2])) {
                for (const auto& s : gergonne_enumerate(std::get<ECircle>(in[0]), std::get<ECircle>(in[1]),
                                                        std::get<ECircle>(in[2]), tol)) {
                    std::string sel;
                    for (auto v : {s.selection.axis.s12, s.selection.axis.s13, s.selection.axis.s23})
                        sel += v == Similitude::External ? 'E' : 'I';
                    std::string far;
                    for (bool f : s.selection.far)
                        far += f ? '1' : '0';
                    r.apollonius.push_back("axis=" + sel + " far=" + far + " " + fmt(GeneralizedCircle(s.circle)) +
                                           " residual=" + malfatti::fmt(s.residual));
                }
            } else {
                for (const auto& s : apollonius_all(in, tol))
                    r.apollonius.push_back(fmt(s) + " residual=" + malfatti::fmt(apollonius_residual(s, in)));
            }
        } catch (const Error& e) {
            r.apollonius.push_back(std::string("error=") + to_string(e.code()));
        }
    }

    bool ok = within(*r.system, tol.certificate);
    if (r.analytic)
        ok = ok && within(*r.analytic, tol.certificate);
    r.status = ok ? 0 : 1;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string format_report(const RunResult& r, bool timing) {
    std::ostringstream o;
    const Scene& sc = r.scene;
    o << "malfatti report\n";
    o << "mode " << (sc.mode == Scene::Mode::Triangle ? "triangle" : "cycles") << "\n";
    o << "tolerance kernel=" << fmt(r.tol.kernel) << " certificate=" << fmt(r.tol.certificate) << "\n";
    if (sc.mode == Scene::Mode::Triangle) {
        o << "triangle a=" << fmt(sc.sides.a) << " b=" << fmt(sc.sides.b) << " c=" << fmt(sc.sides.c) << "\n";
    } else {
        for (int i = 0; i < 3; ++i)
            o << "given c" << i + 1 << " " << sc.cycles[i].text << "\n";
    }
    if (r.system)
        for (int i = 0; i < 3; ++i)
            o << "given c" << i + 1 << " " << describe(r.system->given[i]) << "\n";
    if (sc.candidates)
        for (int i = 0; i < 3; ++i)
            o << "candidate m" << i + 1 << " " << (*sc.candidates)[i].text << "\n";
    if (r.schellbach) {
        const auto& s = *r.schellbach;
        o << "schellbach s=" << fmt(s.s) << " l=" << fmt(s.l) << " m=" << fmt(s.m) << " n=" << fmt(s.n) << "\n";
        o << "schellbach phi=" << fmt(s.phi) << " chi=" << fmt(s.chi) << " psi=" << fmt(s.psi) << "\n";
        o << "schellbach lambda=" << fmt(s.lambda) << " mu=" << fmt(s.mu) << " nu=" << fmt(s.nu) << "\n";
        o << "schellbach xi=" << fmt(s.xi) << " eta=" << fmt(s.eta) << " zeta=" << fmt(s.zeta) << "\n";
        o << "schellbach x=" << fmt(s.x) << " y=" << fmt(s.y) << " z=" << fmt(s.z) << "\n";
        o << "schellbach residuals=" << fmt(s.residuals[0]) << "," << fmt(s.residuals[1]) << ","
          << fmt(s.residuals[2]) << " consistency=" << fmt(s.consistency[0]) << "," << fmt(s.consistency[1])
          << "," << fmt(s.consistency[2]) << " polish_iterations=" << s.polish_iterations << "\n";
    }
    if (r.analytic)
        emit_system(o, "analytic", *r.analytic);
    if (r.system)
        emit_system(o, "steiner", *r.system);
    if (r.analytic)
        o << "cross_method_delta=" << fmt(r.cross_method_delta) << "\n";
    if (r.system)
        for (const auto& e : r.system->trace.entries) {
            o << "trace " << e.label << " ";
            if (const auto* p = std::get_if<Vec2>(&e.object))
                o << "point=" << fmt(*p);
            else
                o << fmt(std::get<GeneralizedCircle>(e.object));
            o << " residual=" << fmt(e.residual) << "\n";
        }
    if (r.hart) {
        if (!r.hart->note.empty())
            o << "hart note " << r.hart->note << "\n";
        for (const auto& n : r.hart->residuals)
            o << "hart " << n.name << " residual=" << fmt(n.value) << "\n";
        o << "hart max_residual=" << fmt(r.hart->max_residual()) << "\n";
    } else if (!r.hart_note.empty()) {
        o << "hart not-applicable " << r.hart_note << "\n";
    }
    for (const auto& a : r.apollonius)
        o << "apollonius " << a << "\n";
    if (timing)
        o << "timing elapsed_ms=" << fmt(r.elapsed_ms) << "\n";
    o << "status " << (r.status == 0 ? "ok" : "residual-failure") << "\n";
    return o.str();
}

}  // namespace malfatti
