#pragma once

#include <array>
#include <optional>
#include <string>

#include "malfatti/error.hpp"
#include "malfatti/hyp_cycles.hpp"
#include "malfatti/model_core.hpp"
#include "malfatti/schellbach.hpp"

namespace malfatti {

class ParseError : public Error {
public:
    ParseError(ErrorCode code, int line, int column, const std::string& what)
        : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

struct CycleSpec {
    std::string text;  // the descriptor as written, normalized spacing
    Cycle cycle;
};

struct Scene {
    enum class Mode { Triangle, Cycles };
    Mode mode = Mode::Triangle;
    TriangleSides sides;
    std::array<CycleSpec, 3> cycles;
    std::optional<std::array<CycleSpec, 3>> candidates;
    Tolerance tol;
};

// Line-oriented scene text, see README for the format.
Scene parse_scene(const std::string& text);

}  // namespace malfatti
