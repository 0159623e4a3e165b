#include <cstdio>
#include <sstream>

#include "malfatti/report.hpp"

namespace malfatti {

namespace {

std::string num(double v) {
    if (std::abs(v) < 5e-10)
        v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// y is flipped by the enclosing group transform
std::string shape(const GeneralizedCircle& g, const std::string& style) {
    if (const auto* c = as_circle(g))
        return "<circle cx=\"" + num(c->center.x) + "\" cy=\"" + num(c->center.y) + "\" r=\"" +
               num(c->radius) + "\" " + style + "/>";
    const auto& l = std::get<PlaneLine>(g);
    Vec2 p = l.point(), d = l.direction();
    Vec2 a = p - d * 4.0, b = p + d * 4.0;
    return "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) +
           "\" " + style + "/>";
}

void cycle_group(std::ostringstream& o, const Cycle& c, const std::string& cls, const std::string& color) {
    o << "  <g class=\"cycle " << cls << "\" data-kind=\"" << to_string(c.kind) << "\">\n";
    std::string base = "fill=\"none\" stroke=\"" + color + "\" stroke-width=\"0.006\"";
    o << "    " << shape(c.carrier, base + " class=\"branch carrier\"") << "\n";
    if (c.second_branch)
        o << "    " << shape(*c.second_branch, base + " stroke-dasharray=\"0.02 0.015\" class=\"branch second\"")
          << "\n";
    o << "  </g>\n";
}

}  // namespace

std::string render_svg(const RunResult& r) {
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" "
         "viewBox=\"-1.1 -1.1 2.2 2.2\">\n";
    o << "<g transform=\"scale(1,-1)\">\n";
    o << "  <circle class=\"model\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"#f7f7f2\" stroke=\"#000000\" "
         "stroke-width=\"0.008\"/>\n";
    if (r.system) {
        const auto& sys = *r.system;
        for (const auto& c : sys.given)
            cycle_group(o, c, "given", "#1f4e9c");
        for (const auto& c : sys.cycles)
            cycle_group(o, c, "malfatti", "#b3261e");
        for (const auto& c : sys.certificates)
            o << "  <circle class=\"tangency\" cx=\"" << num(c.cert.point.x) << "\" cy=\"" << num(c.cert.point.y)
              << "\" r=\"0.012\" fill=\"" << (c.valid ? "#2a7d2a" : "#ff00ff") << "\"/>\n";
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

}  // namespace malfatti
