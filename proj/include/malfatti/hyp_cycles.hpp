#pragma once

#include <array>
#include <optional>
#include <vector>

#include "malfatti/lorentz.hpp"
#include "malfatti/model_core.hpp"

namespace malfatti {

// point strictly inside the model circle
class HPoint {
public:
    explicit HPoint(Vec2 p);
    HPoint(double x, double y) : HPoint(Vec2{x, y}) {}

    Vec2 model() const { return p_; }
    double x() const { return p_.x; }
    double y() const { return p_.y; }

private:
    Vec2 p_;
};

enum class CycleKind { HyperbolicCircle, Paracycle, Hypercycle, Geodesic };

const char* to_string(CycleKind k);

struct Cycle {
    GeneralizedCircle carrier;
    CycleKind kind = CycleKind::HyperbolicCircle;
    // hypercycles only (geodesics carry base_line = carrier, distance 0)
    std::optional<GeneralizedCircle> base_line;
    double distance = 0.0;
    std::optional<GeneralizedCircle> second_branch;
};

enum class Branch { Carrier, Second };

const char* to_string(Branch b);

struct TangencyCertificate {
    Vec2 point;
    Vec2 tangent_direction;
    double residual = 0.0;
    std::array<Branch, 2> branch_tags{Branch::Carrier, Branch::Carrier};
};

struct HTriangle {
    Vec2 A, B, C;
    double a = 0.0, b = 0.0, c = 0.0;

    static HTriangle from_vertices(Vec2 A, Vec2 B, Vec2 C);
};

enum class Vertex { A, B, C };

double hyp_distance(const HPoint& p, const HPoint& q);
double hyp_distance(Vec2 p, Vec2 q);

// Empty when the carrier does not meet the open disk.
std::optional<CycleKind> classify_carrier(const GeneralizedCircle& c, double tol = 1e-10);

Cycle build_cycle(const GeneralizedCircle& c, double tol = 1e-10);

// Branches of a cycle in the fixed search order (carrier first).
std::vector<std::pair<Branch, GeneralizedCircle>> branches(const Cycle& c);

std::optional<TangencyCertificate> cycles_touching(const Cycle& c1, const Cycle& c2, double tol);
std::vector<TangencyCertificate> cycles_touching_all(const Cycle& c1, const Cycle& c2, double tol);

// Hyperbolic center and radius of a cycle of kind HyperbolicCircle.
lorentz::HCircle hyperbolic_circle(const Cycle& c);
Cycle cycle_of(const lorentz::HCircle& c);
Cycle geodesic_cycle(const lorentz::LVec& N);

double hyperbolic_distance_to_line(Vec2 p, const GeneralizedCircle& geodesic_carrier);

double tangent_length_point_cycle(const HPoint& p, const Cycle& c, double tol = 1e-10);

struct TangentSegmentLengths {
    std::optional<double> outer;
    std::optional<double> inner;  // empty for overlapping circles
};

TangentSegmentLengths common_tangent_segment_lengths(const Cycle& c1, const Cycle& c2,
                                                     double tol = 1e-10);

HTriangle embed_triangle(double a, double b, double c);

// interior angle at a vertex (hyperbolic law of cosines)
double triangle_angle(const HTriangle& t, Vertex v);

Cycle angle_bisector(const HTriangle& t, Vertex v);

Cycle incircle_of_geodesics(const Cycle& g1, const Cycle& g2, const Cycle& g3);

// Inversion in the model circle.
inline InversiveMap model_inversion() { return Inversion{{0.0, 0.0}, 1.0}; }

}  // namespace malfatti
