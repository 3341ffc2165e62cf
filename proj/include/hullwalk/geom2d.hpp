#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace hullwalk {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    /// Throws Error{NonFinite} when either coordinate is NaN or infinite.
    static Vec2 checked(double x, double y);

    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }
/// Anticlockwise rotation by pi/2.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

enum class Degeneracy { Point, Segment, FullDim };

/// Convex compact set stored by its extreme points in counter-clockwise order.
/// Only convex_hull() and from_ccw_vertices() create instances, so the
/// vertex invariants hold for every live object.
class ConvexPolygon {
public:
    /// Validates CCW order, strict convexity and uniqueness; throws
    /// Error{InvalidArgument} otherwise.
    static ConvexPolygon from_ccw_vertices(std::vector<Vec2> vertices);

    std::span<const Vec2> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    Degeneracy degeneracy() const { return degeneracy_; }

private:
    ConvexPolygon(std::vector<Vec2> v, Degeneracy d) : vertices_(std::move(v)), degeneracy_(d) {}
    friend ConvexPolygon convex_hull(std::span<const Vec2> points);

    std::vector<Vec2> vertices_;
    Degeneracy degeneracy_;
};

/// Andrew's monotone chain. Collinearity is decided with a relative
/// tolerance of 1e-12 times the squared coordinate magnitude.
ConvexPolygon convex_hull(std::span<const Vec2> points);

/// Boundary length; a segment counts twice its length and a point is 0.
double perimeter(const ConvexPolygon& poly);
double area(const ConvexPolygon& poly);
double diameter(std::span<const Vec2> points);

/// max over vertices of <v, dir>; dir must be a unit vector (1e-12).
double support(const ConvexPolygon& poly, Vec2 dir);

/// Hausdorff distance via the support-function characterisation, evaluated
/// on 4096 uniform directions plus every outward edge normal of both sets.
double hausdorff(const ConvexPolygon& a, const ConvexPolygon& b);

/// Midpoint-rule quadrature of the projected width over [0, pi). Independent
/// of any hull construction.
double cauchy_perimeter(std::span<const Vec2> points, int n_angles);

/// Distance from the origin to the boundary. Throws Error{OriginOutside} if
/// the origin is not in the polygon.
double dist_origin_to_boundary(const ConvexPolygon& poly);

/// Area of the triangle spanned by u and v.
inline double triangle_area(Vec2 u, Vec2 v) { return 0.5 * std::abs(cross(u, v)); }

/// Area of the r-parallel body: area + r * perimeter + pi r^2.
double steiner_area(const ConvexPolygon& poly, double r);

/// Polygonal approximation of the r-parallel body using `arc_points` samples
/// on each vertex arc. Used to exercise hausdorff().
ConvexPolygon parallel_body(const ConvexPolygon& poly, double r, int arc_points);

}  // namespace hullwalk
