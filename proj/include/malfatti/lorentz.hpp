#pragma once

// Hyperboloid model helpers. Points of the hyperbolic plane are future unit
// timelike vectors, geodesics are unit spacelike normals N with
// sinh(signed distance) = <X, N>.

#include <optional>

#include "malfatti/model_core.hpp"

namespace malfatti::lorentz {

struct LVec {
    double t = 0.0, x = 0.0, y = 0.0;

    LVec operator+(const LVec& o) const { return {t + o.t, x + o.x, y + o.y}; }
    LVec operator-(const LVec& o) const { return {t - o.t, x - o.x, y - o.y}; }
    LVec operator*(double s) const { return {t * s, x * s, y * s}; }
    LVec operator-() const { return {-t, -x, -y}; }
};

inline double ldot(const LVec& a, const LVec& b) { return -a.t * b.t + a.x * b.x + a.y * b.y; }

// J(a x b): Lorentz-orthogonal to both a and b
LVec lcross(const LVec& a, const LVec& b);

LVec from_disk(Vec2 p);
Vec2 to_disk(const LVec& X);

// normalizes a spacelike vector to <N, N> = 1
LVec unit_space(const LVec& v);
// normalizes a timelike vector to the future sheet
LVec unit_time(const LVec& v);

double distance(const LVec& X, const LVec& Y);

// geodesic through two points, oriented so that `toward` (if given) is on the positive side
LVec line_through(const LVec& A, const LVec& B);
LVec oriented(const LVec& N, const LVec& toward);

// intersection point of two geodesics, empty when they do not meet
std::optional<LVec> meet(const LVec& N1, const LVec& N2);

// foot of the perpendicular from X onto N
LVec foot(const LVec& X, const LVec& N);

// unit tangent at A pointing toward B, and the point at distance s along it
LVec direction(const LVec& A, const LVec& B);
LVec along(const LVec& A, const LVec& U, double s);

// disk-model carrier of a geodesic normal
GeneralizedCircle carrier_of_line(const LVec& N);
// geodesic normal from an orthogonal carrier (orientation from the carrier representation)
LVec line_of_carrier(const GeneralizedCircle& g);

// unit-speed hyperbolic circle
struct HCircle {
    LVec center;
    double radius = 0.0;
};

// converts through the diameter through the origin and the center
ECircle carrier_of_circle(const HCircle& c);
HCircle circle_of_carrier(const ECircle& c);

// circle on the positive side of three oriented geodesics touching all three
std::optional<HCircle> incircle(const LVec& N1, const LVec& N2, const LVec& N3);

// common tangent geodesics of two circles, oriented with c1 on the positive
// side; inner tangents have c2 on the negative side, outer ones on the positive
std::vector<LVec> tangent_lines(const HCircle& c1, const HCircle& c2, TangentKind kind);

}  // namespace malfatti::lorentz
