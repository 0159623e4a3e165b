#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "malfatti/error.hpp"
#include "malfatti/report.hpp"
#include "malfatti/scene.hpp"

using namespace malfatti;

namespace {

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Malfatti circles and cycles in the Poincare disk"};
    app.require_subcommand(1);
    auto* solve = app.add_subcommand("solve", "solve a scene and certify the tangencies");
    std::string scene_path, svg_path, report_path;
    std::optional<double> tol;
    bool enumerate = false, timing = false;
    solve->add_option("scene", scene_path, "scene file")->required();
    solve->add_option("--svg", svg_path, "write an SVG drawing");
    solve->add_option("--tol", tol, "certificate tolerance")->check(CLI::PositiveNumber);
    solve->add_option("--report", report_path, "write the report here instead of stdout");
    solve->add_flag("--enumerate-apollonius", enumerate, "list every tangent circle of the given carriers");
    solve->add_flag("--timing", timing, "append the elapsed time to the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::ifstream in(scene_path, std::ios::binary);
    if (!in) {
        std::cerr << "error code=SyntaxError: cannot read " << scene_path << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    try {
        Scene scene = parse_scene(buf.str());
        RunOptions opts;
        opts.tol = tol;
        opts.enumerate_apollonius = enumerate;
        RunResult r = run(scene, opts);
        std::string report = format_report(r, timing);
        if (report_path.empty())
            std::cout << report;
        else if (!write_file(report_path, report)) {
            std::cerr << "error: cannot write " << report_path << "\n";
            return 3;
        }
        if (!svg_path.empty() && !write_file(svg_path, render_svg(r))) {
            std::cerr << "error: cannot write " << svg_path << "\n";
            return 3;
        }
        return r.status;
    } catch (const Error& e) {
        std::string msg = e.what();
        std::string prefix = std::string(to_string(e.code())) + ": ";
        if (msg.rfind(prefix, 0) == 0)
            msg.erase(0, prefix.size());
        std::cerr << "error code=" << to_string(e.code()) << ": " << msg << "\n";
        return exit_status(e.code());
    }
}
