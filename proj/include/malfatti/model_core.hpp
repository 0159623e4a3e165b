#pragma once

#include <cmath>
#include <optional>
#include <variant>
#include <vector>

namespace malfatti {

struct Tolerance {
    double kernel = 1e-10;       // incidence / tangency predicates of the plane kernel
    double certificate = 1e-9;   // acceptance threshold for tangency certificates
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

using PlanePoint = Vec2;

// {p : normal . p = offset}, |normal| = 1
struct PlaneLine {
    Vec2 normal{1.0, 0.0};
    double offset = 0.0;

    static PlaneLine make(Vec2 n, double d);
    static PlaneLine through(Vec2 a, Vec2 b);

    double signed_distance(Vec2 p) const { return dot(normal, p) - offset; }
    Vec2 direction() const { return perp(normal); }
    Vec2 foot(Vec2 p) const { return p - normal * signed_distance(p); }
    Vec2 point() const { return normal * offset; }
    PlaneLine flipped() const { return {-normal, -offset}; }
};

// radius 0 is a point circle (used for point constraints in Apollonius problems)
struct ECircle {
    Vec2 center;
    double radius = 1.0;

    Vec2 at(double angle) const {
        return center + Vec2{std::cos(angle), std::sin(angle)} * radius;
    }
};

using GeneralizedCircle = std::variant<ECircle, PlaneLine>;

struct Inversion {
    Vec2 center;
    double power = 1.0;
};

struct Reflection {
    PlaneLine axis;
};

using InversiveMap = std::variant<Inversion, Reflection>;

double power_of_point(Vec2 p, const ECircle& c);

Vec2 apply_inversive_map(const InversiveMap& m, Vec2 p);
GeneralizedCircle apply_inversive_map(const InversiveMap& m, const GeneralizedCircle& g,
                                      const Tolerance& tol = {});

struct SimilitudeCenters {
    std::optional<Vec2> external;  // empty when the radii are equal (point at infinity)
    Vec2 internal;
};

SimilitudeCenters similitude_centers(const ECircle& c1, const ECircle& c2,
                                     const Tolerance& tol = {});

InversiveMap antisimilitude_map(const ECircle& c1, const ECircle& c2,
                                const Tolerance& tol = {});

Vec2 radical_center(const ECircle& c1, const ECircle& c2, const ECircle& c3,
                    const Tolerance& tol = {});

Vec2 pole(const PlaneLine& l, const ECircle& c, const Tolerance& tol = {});
PlaneLine polar(Vec2 p, const ECircle& c, const Tolerance& tol = {});

enum class Similitude { External, Internal };

// pairs in the order (c1,c2), (c1,c3), (c2,c3)
struct SimilitudeSigns {
    Similitude s12 = Similitude::External;
    Similitude s13 = Similitude::External;
    Similitude s23 = Similitude::External;
};

bool admissible(const SimilitudeSigns& s);
std::vector<SimilitudeSigns> admissible_sign_triples();

PlaneLine similitude_axis(const ECircle& c1, const ECircle& c2, const ECircle& c3,
                          const SimilitudeSigns& signs, const Tolerance& tol = {});

enum class TangentKind { Outer, Inner };

struct CommonTangent {
    PlaneLine line;
    TangentKind kind;
};

std::vector<CommonTangent> common_tangents(const ECircle& c1, const ECircle& c2,
                                           const Tolerance& tol = {});

std::vector<Vec2> intersect(const GeneralizedCircle& a, const GeneralizedCircle& b,
                            const Tolerance& tol = {});

// Circle (or line, when collinear) through three distinct points.
GeneralizedCircle circle_through(Vec2 a, Vec2 b, Vec2 c, const Tolerance& tol = {});

enum class ContactKind { External, Internal };

// Euclidean contact of two generalized circles: the midpoint of the closest
// pair of points, the common tangent direction there, and the gap.
struct Contact {
    Vec2 point;
    Vec2 direction;
    double residual = 0.0;
    ContactKind kind = ContactKind::External;
};

// Best contact candidates (external and internal for two circles, one for a
// circle and a line). Lines never touch each other at a finite point.
std::vector<Contact> contacts(const GeneralizedCircle& a, const GeneralizedCircle& b);
std::optional<Contact> tangency(const GeneralizedCircle& a, const GeneralizedCircle& b,
                                double tol);

// Distance of p from the point set of g.
double distance_to(const GeneralizedCircle& g, Vec2 p);

// Signed side function: negative inside a circle (or on the normal's
// negative side of a line), positive outside.
double side_value(const GeneralizedCircle& g, Vec2 p);

bool is_line(const GeneralizedCircle& g);
const ECircle* as_circle(const GeneralizedCircle& g);
const PlaneLine* as_line(const GeneralizedCircle& g);

// Points (n samples) on the object; lines are sampled around their foot of
// the origin with the given half-length.
std::vector<Vec2> sample(const GeneralizedCircle& g, int n, double half_length = 4.0);

}  // namespace malfatti
