#include "hullwalk/geom2d.hpp"

#include "hullwalk/error.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace hullwalk {

Vec2 Vec2::checked(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw Error(ErrorCode::NonFinite, "coordinates must be finite");
    }
    return {x, y};
}

ConvexPolygon ConvexPolygon::from_ccw_vertices(std::vector<Vec2> v) {
    if (v.empty()) {
        throw Error(ErrorCode::EmptyInput, "polygon needs at least one vertex");
    }
    for (const Vec2& p : v) {
        if (!is_finite(p)) {
            throw Error(ErrorCode::NonFinite, "polygon vertex is not finite");
        }
    }
    if (v.size() == 1) {
        return ConvexPolygon(std::move(v), Degeneracy::Point);
    }
    if (v.size() == 2) {
        if (v[0] == v[1]) {
            throw Error(ErrorCode::InvalidArgument, "duplicate segment endpoints");
        }
        return ConvexPolygon(std::move(v), Degeneracy::Segment);
    }
    const std::size_t n = v.size();
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = v[i];
        const Vec2 b = v[(i + 1) % n];
        const Vec2 c = v[(i + 2) % n];
        if (!(cross(b - a, c - b) > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "vertices are not strictly convex in CCW order");
        }
        turning += std::atan2(cross(b - a, c - b), dot(b - a, c - b));
    }
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-9) {
        throw Error(ErrorCode::InvalidArgument, "vertex chain winds more than once");
    }
    return ConvexPolygon(std::move(v), Degeneracy::FullDim);
}

ConvexPolygon convex_hull(std::span<const Vec2> points) {
    if (points.empty()) {
        throw Error(ErrorCode::EmptyInput, "convex_hull of an empty set");
    }
    double scale = 0.0;
    for (const Vec2& p : points) {
        if (!is_finite(p)) {
            throw Error(ErrorCode::NonFinite, "input point is not finite");
        }
        scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    }
    const double tol = 1e-12 * scale * scale;

    std::vector<Vec2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() == 1) {
        return ConvexPolygon(std::move(pts), Degeneracy::Point);
    }

    const std::size_t n = pts.size();
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    auto turns_left = [tol](Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a) > tol; };
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && !turns_left(hull[k - 2], hull[k - 1], pts[i])) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && !turns_left(hull[k - 2], hull[k - 1], pts[i])) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);

    if (hull.size() <= 2) {
        // Collinear input: the chain collapses to its two extreme points.
        return ConvexPolygon({pts.front(), pts.back()}, Degeneracy::Segment);
    }
    return ConvexPolygon(std::move(hull), Degeneracy::FullDim);
}

double perimeter(const ConvexPolygon& poly) {
    const auto v = poly.vertices();
    switch (poly.degeneracy()) {
        case Degeneracy::Point:
            return 0.0;
        case Degeneracy::Segment:
            return 2.0 * norm(v[1] - v[0]);
        case Degeneracy::FullDim:
            break;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        total += norm(v[(i + 1) % v.size()] - v[i]);
    }
    return total;
}

double area(const ConvexPolygon& poly) {
    if (poly.degeneracy() != Degeneracy::FullDim) return 0.0;
    const auto v = poly.vertices();
    // Shoelace relative to the first vertex keeps the terms small when the
    // polygon sits far from the origin.
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        twice += cross(v[i] - v[0], v[i + 1] - v[0]);
    }
    return 0.5 * std::abs(twice);
}

double diameter(std::span<const Vec2> points) {
    if (points.size() < 2) return 0.0;
    const ConvexPolygon hull = convex_hull(points);
    const auto v = hull.vertices();
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            best = std::max(best, norm(v[i] - v[j]));
        }
    }
    return best;
}

double support(const ConvexPolygon& poly, Vec2 dir) {
    if (std::abs(norm(dir) - 1.0) > 1e-12) {
        throw Error(ErrorCode::NonUnitDirection, "support direction must have unit length");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec2& p : poly.vertices()) best = std::max(best, dot(p, dir));
    return best;
}

namespace {

double support_unchecked(std::span<const Vec2> v, Vec2 dir) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec2& p : v) best = std::max(best, dot(p, dir));
    return best;
}

void append_edge_normal_angles(const ConvexPolygon& poly, std::vector<double>& angles) {
    const auto v = poly.vertices();
    if (poly.degeneracy() == Degeneracy::Point) return;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 e = v[(i + 1) % v.size()] - v[i];
        // outward normal of a CCW edge is the edge rotated clockwise
        angles.push_back(std::atan2(-e.x, e.y));
        if (poly.degeneracy() == Degeneracy::Segment) {
            angles.push_back(std::atan2(e.x, -e.y));
            break;
        }
    }
}

}  // namespace

double hausdorff(const ConvexPolygon& a, const ConvexPolygon& b) {
    constexpr int kUniform = 4096;
    std::vector<double> angles;
    angles.reserve(kUniform + a.size() + b.size() + 2);
    for (int j = 0; j < kUniform; ++j) {
        angles.push_back(2.0 * std::numbers::pi * j / kUniform);
    }
    append_edge_normal_angles(a, angles);
    append_edge_normal_angles(b, angles);

    double best = 0.0;
    for (double t : angles) {
        const Vec2 dir{std::cos(t), std::sin(t)};
        best = std::max(best, std::abs(support_unchecked(a.vertices(), dir) - support_unchecked(b.vertices(), dir)));
    }
    return best;
}

double cauchy_perimeter(std::span<const Vec2> points, int n_angles) {
    if (points.empty()) {
        throw Error(ErrorCode::EmptyInput, "cauchy_perimeter of an empty set");
    }
    if (n_angles < 4) {
        throw Error(ErrorCode::InvalidArgument, "cauchy_perimeter needs at least 4 angles");
    }
    const double h = std::numbers::pi / n_angles;
    double total = 0.0;
    for (int j = 0; j < n_angles; ++j) {
        const double t = (j + 0.5) * h;
        const Vec2 e{std::cos(t), std::sin(t)};
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const Vec2& p : points) {
            const double s = dot(p, e);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        total += hi - lo;
    }
    return total * h;
}

double dist_origin_to_boundary(const ConvexPolygon& poly) {
    const auto v = poly.vertices();
    double scale = 0.0;
    for (const Vec2& p : v) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    const double tol = 1e-9 * std::max(scale, 1.0);

    switch (poly.degeneracy()) {
        case Degeneracy::Point:
            if (norm(v[0]) > tol) throw Error(ErrorCode::OriginOutside, "origin is not the point");
            return 0.0;
        case Degeneracy::Segment: {
            const Vec2 d = v[1] - v[0];
            const double len = norm(d);
            const double off = std::abs(cross(d, -v[0])) / len;
            const double t = dot(-v[0], d) / (len * len);
            if (off > tol || t < -tol / len || t > 1.0 + tol / len) {
                throw Error(ErrorCode::OriginOutside, "origin is not on the segment");
            }
            return 0.0;
        }
        case Degeneracy::FullDim:
            break;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i];
        const Vec2 b = v[(i + 1) % v.size()];
        const double signed_dist = cross(a, b) / norm(b - a);
        if (signed_dist < -tol) {
            throw Error(ErrorCode::OriginOutside, "origin lies outside the polygon");
        }
        best = std::min(best, signed_dist);
    }
    return std::max(best, 0.0);
}

double steiner_area(const ConvexPolygon& poly, double r) {
    if (!(r >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "parallel-body radius must be non-negative");
    }
    return area(poly) + r * perimeter(poly) + std::numbers::pi * r * r;
}

ConvexPolygon parallel_body(const ConvexPolygon& poly, double r, int arc_points) {
    if (!(r >= 0.0) || arc_points < 2) {
        throw Error(ErrorCode::InvalidArgument, "parallel_body needs r >= 0 and arc_points >= 2");
    }
    const auto v = poly.vertices();
    std::vector<Vec2> samples;
    if (poly.degeneracy() == Degeneracy::Point) {
        for (int j = 0; j < 4 * arc_points; ++j) {
            const double t = 2.0 * std::numbers::pi * j / (4 * arc_points);
            samples.push_back(v[0] + r * Vec2{std::cos(t), std::sin(t)});
        }
        return convex_hull(samples);
    }
    // Treat a segment as the 2-gon a -> b -> a.
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 prev = v[(i + n - 1) % n];
        const Vec2 cur = v[i];
        const Vec2 next = v[(i + 1) % n];
        const Vec2 ein = cur - prev;
        const Vec2 eout = next - cur;
        double t0 = std::atan2(-ein.x, ein.y);
        double t1 = std::atan2(-eout.x, eout.y);
        if (t1 < t0) t1 += 2.0 * std::numbers::pi;
        for (int j = 0; j <= arc_points; ++j) {
            const double t = t0 + (t1 - t0) * j / arc_points;
            samples.push_back(cur + r * Vec2{std::cos(t), std::sin(t)});
        }
    }
    return convex_hull(samples);
}

}  // namespace hullwalk
