#pragma once

#include <optional>
#include <string>
#include <vector>

#include "malfatti/constructions.hpp"
#include "malfatti/scene.hpp"
#include "malfatti/schellbach.hpp"

namespace malfatti {

struct RunOptions {
    std::optional<double> tol;  // overrides the certificate tolerance
    bool enumerate_apollonius = false;
};

struct RunResult {
    Scene scene;
    Tolerance tol;
    std::optional<SchellbachSolution> schellbach;
    std::optional<MalfattiCycleSystem> analytic;  // triangle mode
    std::optional<MalfattiCycleSystem> system;    // Steiner output, or the checked candidates
    double cross_method_delta = 0.0;
    std::optional<VerificationReport> hart;
    std::string hart_note;
    std::vector<std::string> apollonius;  // formatted enumeration lines
    double elapsed_ms = 0.0;
    int status = 0;  // 0 all residuals within tolerance, 1 otherwise
};

RunResult run(const Scene& scene, const RunOptions& opts = {});

// text report, 15 significant digits throughout
std::string format_report(const RunResult& r, bool timing = false);

// SVG 1.1 drawing of the model disk; a default RunResult draws only the model circle
std::string render_svg(const RunResult& r);

// %.15g with negative zero printed as 0
std::string fmt(double v);

}  // namespace malfatti
