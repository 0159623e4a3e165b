#include "malfatti/scene.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "malfatti/lorentz.hpp"

namespace malfatti {

namespace {

struct Token {
    std::string text;
    int column = 1;
};

struct Field {
    std::string key, value;
    int column = 1;        // of the key
    int value_column = 1;  // of the value
};

std::vector<Token> tokenize(const std::string& line, int lineno) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        Token t;
        t.column = static_cast<int>(i) + 1;
        int depth = 0;
        while (i < line.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(line[i])))) {
            char ch = line[i];
            if (ch == '#' && depth == 0)
                break;
            if (ch == '(')
                ++depth;
            if (ch == ')' && --depth < 0)
                throw ParseError(ErrorCode::SyntaxError, lineno, static_cast<int>(i) + 1, "unbalanced ')'");
            if (!std::isspace(static_cast<unsigned char>(ch)))
                t.text += ch;
            ++i;
        }
        if (depth > 0)
            throw ParseError(ErrorCode::SyntaxError, lineno, t.column, "unbalanced '('");
        out.push_back(std::move(t));
    }
    return out;
}

class Directive {
public:
    Directive(std::string name, int line, int column, std::vector<Field> fields)
        : name_(std::move(name)), line_(line), column_(column), fields_(std::move(fields)) {}

    const std::string& name() const { return name_; }
    int line() const { return line_; }
    int column() const { return column_; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(ErrorCode::SemanticError, line_, column_, msg);
    }
    [[noreturn]] void fail(const Field& f, const std::string& msg) const {
        throw ParseError(ErrorCode::SemanticError, line_, f.value_column, msg);
    }

    const Field* find(const std::string& key) const {
        for (const auto& f : fields_)
            if (f.key == key)
                return &f;
        return nullptr;
    }
    const Field& get(const std::string& key) const {
        const Field* f = find(key);
        if (!f)
            fail("'" + name_ + "' needs " + key + "=");
        used_.push_back(key);
        return *f;
    }
    bool has(const std::string& key) const { return find(key) != nullptr; }

    double number(const Field& f) const {
        double v = 0.0;
        const char* b = f.value.data();
        const char* e = b + f.value.size();
        auto r = std::from_chars(b, e, v);
        if (r.ec != std::errc() || r.ptr != e)
            throw ParseError(ErrorCode::SyntaxError, line_, f.value_column,
                             "expected a number, got '" + f.value + "'");
        if (!std::isfinite(v))
            fail(f, "number must be finite");
        return v;
    }
    double number(const std::string& key) const { return number(get(key)); }

    std::array<double, 2> pair(const std::string& key) const {
        const Field& f = get(key);
        const std::string& v = f.value;
        size_t comma = v.find(',');
        if (v.size() < 5 || v.front() != '(' || v.back() != ')' || comma == std::string::npos ||
            v.find(',', comma + 1) != std::string::npos)
            throw ParseError(ErrorCode::SyntaxError, line_, f.value_column,
                             "expected a pair (x,y), got '" + v + "'");
        Field a{f.key, v.substr(1, comma - 1), f.column, f.value_column + 1};
        Field b{f.key, v.substr(comma + 1, v.size() - comma - 2), f.column,
                f.value_column + static_cast<int>(comma) + 1};
        return {number(a), number(b)};
    }

    void check_unused() const {
        for (const auto& f : fields_) {
            bool ok = false;
            for (const auto& u : used_)
                ok = ok || u == f.key;
            if (!ok)
                throw ParseError(ErrorCode::SemanticError, line_, f.column,
                                 "unknown key '" + f.key + "' for '" + name_ + "'");
        }
    }

private:
    std::string name_;
    int line_, column_;
    std::vector<Field> fields_;
    mutable std::vector<std::string> used_;
};

Vec2 ideal_point(double deg) {
    double a = deg * M_PI / 180.0;
    return {std::cos(a), std::sin(a)};
}

lorentz::LVec geodesic_between(const Directive& d, Vec2 e1, Vec2 e2) {
    if (dist(e1, e2) < 1e-9)
        d.fail("ideal endpoints must differ");
    lorentz::LVec n1{1.0, e1.x, e1.y}, n2{1.0, e2.x, e2.y};
    return lorentz::unit_space(lorentz::lcross(n1, n2));
}

std::string normalized_text(const Directive& d, const std::vector<Field>& fields) {
    std::string s = d.name();
    for (const auto& f : fields)
        s += " " + f.key + "=" + f.value;
    return s;
}

Cycle build_spec(const Directive& d) {
    const Field& kf = d.get("kind");
    const std::string& kind = kf.value;
    Cycle c;
    try {
        if (kind == "circle") {
            auto ctr = d.pair("center");
            double r = d.number("r");
            if (!(r > 0.0))
                d.fail("circle radius must be positive");
            if (ctr[0] * ctr[0] + ctr[1] * ctr[1] >= 1.0 - 1e-12)
                d.fail("circle center must lie inside the model disk");
            c = cycle_of({lorentz::from_disk({ctr[0], ctr[1]}), r});
        } else if (kind == "paracycle") {
            Vec2 u = ideal_point(d.number("ideal"));
            double rho = d.number("radius");
            if (!(rho > 0.0 && rho < 1.0))
                d.fail("paracycle carrier radius must lie in (0, 1)");
            c = build_cycle(ECircle{u * (1.0 - rho), rho});
        } else if (kind == "geodesic") {
            auto e = d.pair("ideal");
            c = geodesic_cycle(geodesic_between(d, ideal_point(e[0]), ideal_point(e[1])));
        } else if (kind == "hypercycle") {
            auto e = d.pair("ideal");
            Vec2 e1 = ideal_point(e[0]), e2 = ideal_point(e[1]);
            lorentz::LVec N = geodesic_between(d, e1, e2);
            const Field& df = d.get("distance");
            if (df.value == "chord") {
                c = build_cycle(PlaneLine::through(e1, e2));
            } else {
                double dd = d.number(df);
                if (!(dd > 0.0))
                    d.fail(df, "hypercycle distance must be positive");
                const Field& sf = d.get("side");
                if (sf.value != "left" && sf.value != "right")
                    d.fail(sf, "side must be left or right");
                lorentz::LVec M0 = lorentz::foot({1.0, 0.0, 0.0}, N);
                Vec2 p = lorentz::to_disk(lorentz::along(M0, N, dd));
                bool left = cross(e2 - e1, p - e1) > 0.0;
                if (left != (sf.value == "left"))
                    p = lorentz::to_disk(lorentz::along(M0, -N, dd));
                c = build_cycle(circle_through(e1, e2, p));
            }
        } else {
            d.fail(kf, "unknown cycle kind '" + kind + "'");
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        d.fail(e.what());
    }
    d.check_unused();
    return c;
}

}  // namespace

Scene parse_scene(const std::string& text) {
    Scene sc;
    std::optional<int> triangle_line;
    std::vector<CycleSpec> cycles, candidates;
    int last_line = 1;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto toks = tokenize(line, lineno);
        if (toks.empty())
            continue;
        last_line = lineno;
        std::vector<Field> fields;
        for (size_t i = 1; i < toks.size(); ++i) {
            size_t eq = toks[i].text.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == toks[i].text.size())
                throw ParseError(ErrorCode::SyntaxError, lineno, toks[i].column,
                                 "expected key=value, got '" + toks[i].text + "'");
            Field f{toks[i].text.substr(0, eq), toks[i].text.substr(eq + 1), toks[i].column,
                    toks[i].column + static_cast<int>(eq) + 1};
            for (const auto& g : fields)
                if (g.key == f.key)
                    throw ParseError(ErrorCode::SemanticError, lineno, f.column,
                                     "duplicate key '" + f.key + "'");
            fields.push_back(f);
        }
        Directive d(toks[0].text, lineno, toks[0].column, fields);
        if (d.name() == "triangle") {
            if (triangle_line)
                d.fail("only one triangle directive is allowed");
            triangle_line = lineno;
            sc.sides = {d.number("a"), d.number("b"), d.number("c")};
            d.check_unused();
            const auto& t = sc.sides;
            if (!(t.a > 0.0 && t.b > 0.0 && t.c > 0.0))
                d.fail("side lengths must be positive");
            if (t.a >= t.b + t.c || t.b >= t.c + t.a || t.c >= t.a + t.b)
                d.fail("side lengths violate the triangle inequality");
        } else if (d.name() == "cycle" || d.name() == "candidate") {
            auto& list = d.name() == "cycle" ? cycles : candidates;
            if (list.size() == 3)
                d.fail("at most three '" + d.name() + "' directives are allowed");
            Cycle c = build_spec(d);
            list.push_back({normalized_text(d, fields), c});
        } else if (d.name() == "tolerance") {
            if (d.has("kernel"))
                sc.tol.kernel = d.number("kernel");
            if (d.has("certificate"))
                sc.tol.certificate = d.number("certificate");
            d.check_unused();
            if (!(sc.tol.kernel > 0.0 && sc.tol.certificate > 0.0))
                d.fail("tolerances must be positive");
        } else {
            throw ParseError(ErrorCode::SyntaxError, lineno, toks[0].column,
                             "unknown directive '" + d.name() + "'");
        }
    }
    if (triangle_line && !cycles.empty())
        throw ParseError(ErrorCode::SemanticError, *triangle_line, 1,
                         "a scene is either a triangle or three cycles");
    if (!triangle_line && cycles.size() != 3)
        throw ParseError(ErrorCode::SemanticError, last_line, 1,
                         "a cycles scene needs exactly three cycle directives");
    if (!candidates.empty() && candidates.size() != 3)
        throw ParseError(ErrorCode::SemanticError, last_line, 1, "candidates come in threes");
    sc.mode = triangle_line ? Scene::Mode::Triangle : Scene::Mode::Cycles;
    if (!triangle_line)
        for (int i = 0; i < 3; ++i)
            sc.cycles[i] = cycles[i];
    if (!candidates.empty())
        sc.candidates = std::array<CycleSpec, 3>{candidates[0], candidates[1], candidates[2]};
    return sc;
}

}  // namespace malfatti
