#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "malfatti/hyp_cycles.hpp"
#include "malfatti/lorentz.hpp"
#include "malfatti/model_core.hpp"

namespace malfatti {

// ---- Apollonius -----------------------------------------------------------

struct ApolloniusSelection {
    SimilitudeSigns axis;
    std::array<bool, 3> far{false, false, false};  // far (true) or near intersection with PP_i
};

struct ApolloniusSolution {
    ECircle circle;
    ApolloniusSelection selection;
    double residual = 0.0;
};

// Gergonne's construction for one selection; throws NoSuchTangentCircle when
// the selected points do not give a circle tangent to all three inputs.
ECircle gergonne_apollonius(const ECircle& c1, const ECircle& c2, const ECircle& c3,
                            const ApolloniusSelection& sel, const Tolerance& tol = {});

// distinct tangent circles over all admissible selections, in enumeration order
std::vector<ApolloniusSolution> gergonne_enumerate(const ECircle& c1, const ECircle& c2,
                                                   const ECircle& c3, const Tolerance& tol = {});

double apollonius_residual(const GeneralizedCircle& s, const std::array<GeneralizedCircle, 3>& in);

// every generalized circle tangent to the three inputs (circles of positive
// radius or lines); inputs with lines are normalized by an inversion first
std::vector<GeneralizedCircle> apollonius_all(const std::array<GeneralizedCircle, 3>& in,
                                              const Tolerance& tol = {});

enum class Orientation { External, Internal, Any };

struct ThroughPointSolution {
    GeneralizedCircle circle;
    ContactKind kind1, kind2;
};

std::vector<ThroughPointSolution> apollonius_through_point_all(Vec2 P, const GeneralizedCircle& k1,
                                                               const GeneralizedCircle& k2,
                                                               const Tolerance& tol = {});

// smallest solution through P with the requested contact kinds
ECircle apollonius_through_point(Vec2 P, const ECircle& k1, const ECircle& k2, Orientation o1,
                                 Orientation o2, const Tolerance& tol = {});

// ---- Steiner ----------------------------------------------------------------

using TraceObject = std::variant<Vec2, GeneralizedCircle>;

struct TraceEntry {
    std::string label;
    TraceObject object;
    double residual = 0.0;
};

struct SteinerTrace {
    std::vector<TraceEntry> entries;
    void add(std::string label, TraceObject obj, double residual = 0.0) {
        entries.push_back({std::move(label), std::move(obj), residual});
    }
};

// Hyperbolic triangle construction data (hyperboloid coordinates), indexed by
// vertex 0 = A, 1 = B, 2 = C.
struct TriangleTrace {
    std::array<lorentz::LVec, 3> vertex;
    std::array<lorentz::LVec, 3> side;       // side i opposite vertex i, oriented inward
    std::array<lorentz::LVec, 3> bisector;   // at vertex i
    lorentz::LVec incenter;
    std::array<lorentz::HCircle, 3> sub;     // c'_A, c'_B, c'_C
    std::array<lorentz::LVec, 3> tangent;    // HI, DE, FG: second inner tangent of sub[i+1], sub[i+2]
    std::array<lorentz::LVec, 3> sub_foot;   // I, E, G: sub[i] on side i
    lorentz::LVec K;
    double concurrency = 0.0;
    std::array<double, 3> fourth_residual{};
};

struct NamedCertificate {
    std::string first, second;
    TangencyCertificate cert;
    bool valid = false;
};

struct MalfattiCycleSystem {
    std::string route;                 // "triangle", "cycles", "carrier-triangle"
    std::array<Cycle, 3> given;        // sides (triangle) or input cycles
    std::array<Cycle, 3> cycles;       // m_1, m_2, m_3
    // m_j touches given[j+1] and given[j+2]; plus the three mutual touchings
    std::vector<NamedCertificate> certificates;
    SteinerTrace trace;
    std::optional<TriangleTrace> triangle;
    std::array<GeneralizedCircle, 3> carriers;  // Euclidean solution carriers before lifting

    double max_residual() const;
    bool all_valid() const;
};

// Fills the nine certificates of `sys` from `given` and `cycles`.
void certify(MalfattiCycleSystem& sys, double tol);

MalfattiCycleSystem steiner_triangle(const HTriangle& t, const Tolerance& tol = {});

// the system given by explicit Malfatti circles of a triangle (for the analytic route)
MalfattiCycleSystem triangle_system(const HTriangle& t, const std::array<Cycle, 3>& circles,
                                    const Tolerance& tol = {});

MalfattiCycleSystem steiner_cycles(const Cycle& c1, const Cycle& c2, const Cycle& c3,
                                   const Tolerance& tol = {});

// Euclidean Malfatti circles of a line triangle via the Steiner construction
std::array<ECircle, 3> euclidean_steiner_triangle(Vec2 A, Vec2 B, Vec2 C,
                                                  SteinerTrace* trace = nullptr);

// Euclidean Steiner extension on three disjoint circles (no lifting)
std::array<GeneralizedCircle, 3> euclidean_steiner_circles(const std::array<ECircle, 3>& c,
                                                           SteinerTrace* trace = nullptr,
                                                           const Tolerance& tol = {});

// Cycle of the model carried by a Euclidean solution circle (inverted into the disk when it misses it)
Cycle lift_carrier(const GeneralizedCircle& g, double tol = 1e-10);

// ---- Hart verification -----------------------------------------------------

struct NamedResidual {
    std::string name;
    double value = 0.0;
};

struct VerificationReport {
    bool applicable = true;
    std::string note;
    std::vector<NamedResidual> residuals;

    double max_residual() const;
};

VerificationReport hart_verify(const MalfattiCycleSystem& sys, double tol = 1e-9);

// Tangent-sum residual for a point and two circles: distance of the best
// sum/difference of tangent lengths from some common tangent segment length.
double lemma1_residual(const lorentz::LVec& P, const lorentz::HCircle& c1,
                       const lorentz::HCircle& c2);

}  // namespace malfatti
