#include "hullwalk/geom2d.hpp"
#include "hullwalk/rng.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace hullwalk;
using hullwalk::test::error_code;
using std::numbers::pi;

namespace {

ConvexPolygon unit_square() { return ConvexPolygon::from_ccw_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

// Gift wrapping with exact comparisons on small integer coordinates: an
// independent hull oracle.
std::vector<Vec2> jarvis(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Vec2> hull;
    Vec2 cur = pts.front();
    do {
        hull.push_back(cur);
        Vec2 next = pts[0] == cur ? pts[1] : pts[0];
        for (Vec2 q : pts) {
            if (q == cur) continue;
            const double c = cross(next - cur, q - cur);
            // q strictly clockwise of next, or collinear and farther.
            if (c < 0 || (c == 0 && dot(q - cur, q - cur) > dot(next - cur, next - cur))) next = q;
        }
        cur = next;
    } while (!(cur == hull.front()) && hull.size() <= pts.size());
    return hull;
}

double shoelace(const std::vector<Vec2>& v) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * std::abs(s);
}

double loop_length(const std::vector<Vec2>& v) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += norm(v[(i + 1) % v.size()] - v[i]);
    return s;
}

}  // namespace

TEST_CASE("convex_hull: spec examples") {
    const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    const auto h = convex_hull(square);
    CHECK(h.degeneracy() == Degeneracy::FullDim);
    CHECK(h.size() == 4);

    const std::vector<Vec2> line{{0, 0}, {1, 0}, {2, 0}};
    const auto s = convex_hull(line);
    CHECK(s.degeneracy() == Degeneracy::Segment);
    REQUIRE(s.size() == 2);
    CHECK(std::find(s.vertices().begin(), s.vertices().end(), Vec2{0, 0}) != s.vertices().end());
    CHECK(std::find(s.vertices().begin(), s.vertices().end(), Vec2{2, 0}) != s.vertices().end());

    const std::vector<Vec2> same(5, Vec2{0, 0});
    const auto p = convex_hull(same);
    CHECK(p.degeneracy() == Degeneracy::Point);
    CHECK(p.size() == 1);
    CHECK(p.vertices()[0] == Vec2{0, 0});
}

TEST_CASE("convex_hull: errors and validation") {
    CHECK(error_code([] { convex_hull(std::vector<Vec2>{}); }) == ErrorCode::EmptyInput);
    const std::vector<Vec2> bad{{0, 0}, {NAN, 1}};
    CHECK(error_code([&] { convex_hull(bad); }) == ErrorCode::NonFinite);
    CHECK(error_code([] { Vec2::checked(INFINITY, 0); }) == ErrorCode::NonFinite);
    // clockwise order is rejected
    CHECK(error_code([] { ConvexPolygon::from_ccw_vertices({{0, 0}, {0, 1}, {1, 1}, {1, 0}}); }) ==
          ErrorCode::InvalidArgument);
    // collinear middle vertex is rejected
    CHECK(error_code([] { ConvexPolygon::from_ccw_vertices({{0, 0}, {1, 0}, {2, 0}, {1, 1}}); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("convex_hull matches gift wrapping on integer point sets") {
    RngStream rng(11, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t m = 1 + rng.below(40);
        std::vector<Vec2> pts;
        for (std::size_t i = 0; i < m; ++i) {
            pts.push_back({static_cast<double>(rng.below(9)) - 4.0, static_cast<double>(rng.below(9)) - 4.0});
        }
        const auto h = convex_hull(pts);
        const auto oracle = jarvis(pts);
        if (oracle.size() >= 3 && shoelace(oracle) > 0) {
            CHECK(h.degeneracy() == Degeneracy::FullDim);
            CHECK(area(h) == doctest::Approx(shoelace(oracle)).epsilon(1e-12));
            CHECK(perimeter(h) == doctest::Approx(loop_length(oracle)).epsilon(1e-12));
            // every hull vertex is an input point
            for (Vec2 v : h.vertices()) CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
        }
    }
}

TEST_CASE("perimeter and area") {
    CHECK(perimeter(unit_square()) == doctest::Approx(4.0));
    CHECK(area(unit_square()) == doctest::Approx(1.0));
    const std::vector<Vec2> seg{{0, 0}, {2, 0}};
    CHECK(perimeter(convex_hull(seg)) == doctest::Approx(4.0));
    CHECK(area(convex_hull(seg)) == 0.0);
    const std::vector<Vec2> pt{{3, 4}};
    CHECK(perimeter(convex_hull(pt)) == 0.0);
    const auto tri = ConvexPolygon::from_ccw_vertices({{0, 0}, {1, 0}, {0, 1}});
    CHECK(area(tri) == doctest::Approx(0.5));
}

TEST_CASE("support") {
    CHECK(support(unit_square(), {1, 0}) == doctest::Approx(1.0));
    CHECK(support(unit_square(), {-1, 0}) == doctest::Approx(0.0));
    const std::vector<Vec2> pt{{2, -3}};
    const Vec2 d{0.6, 0.8};
    CHECK(support(convex_hull(pt), d) == doctest::Approx(2 * 0.6 - 3 * 0.8));
    CHECK(error_code([] { support(unit_square(), {1, 1}); }) == ErrorCode::NonUnitDirection);
}

TEST_CASE("hausdorff") {
    const auto sq = unit_square();
    CHECK(hausdorff(sq, sq) == 0.0);
    const auto shifted = ConvexPolygon::from_ccw_vertices({{1, 0}, {2, 0}, {2, 1}, {1, 1}});
    CHECK(hausdorff(sq, shifted) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(hausdorff(shifted, sq) == hausdorff(sq, shifted));
    const double r = 0.3;
    const auto body = parallel_body(sq, r, 256);
    CHECK(std::abs(hausdorff(sq, body) - r) < 1e-4);
}

TEST_CASE("cauchy_perimeter") {
    const std::vector<Vec2> corners{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(std::abs(cauchy_perimeter(corners, 4096) - 4.0) < 5e-3);
    const std::vector<Vec2> seg{{0, 0}, {1, 0}};
    CHECK(std::abs(cauchy_perimeter(seg, 4096) - 2.0) < 5e-3);
    const std::vector<Vec2> pt{{1, 1}};
    CHECK(cauchy_perimeter(pt, 4096) == 0.0);
    CHECK(error_code([] { cauchy_perimeter(std::vector<Vec2>{}, 16); }) == ErrorCode::EmptyInput);
    CHECK(error_code([&] { cauchy_perimeter(corners, 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("dist_origin_to_boundary") {
    const auto centered = ConvexPolygon::from_ccw_vertices({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    CHECK(dist_origin_to_boundary(centered) == doctest::Approx(0.5));
    CHECK(dist_origin_to_boundary(unit_square()) == 0.0);
    const std::vector<Vec2> seg{{-1, -1}, {2, 2}};
    CHECK(dist_origin_to_boundary(convex_hull(seg)) == 0.0);
    const auto away = ConvexPolygon::from_ccw_vertices({{1, 1}, {2, 1}, {2, 2}});
    CHECK(error_code([&] { dist_origin_to_boundary(away); }) == ErrorCode::OriginOutside);
}

TEST_CASE("triangle_area") {
    CHECK(triangle_area({1, 0}, {0, 1}) == doctest::Approx(0.5));
    CHECK(triangle_area({1, 2}, {2, 4}) == 0.0);
    CHECK(triangle_area(2.0 * Vec2{1, 0}, 3.0 * Vec2{0, 1}) == doctest::Approx(3.0));
    // the square-root form agrees
    const Vec2 u{1.3, -0.4};
    const Vec2 v{0.2, 2.1};
    const double root_form = 0.5 * std::sqrt(dot(u, u) * dot(v, v) - dot(u, v) * dot(u, v));
    CHECK(triangle_area(u, v) == doctest::Approx(root_form));
}

TEST_CASE("steiner_area") {
    CHECK(steiner_area(unit_square(), 1.0) == doctest::Approx(5.0 + pi));
    const std::vector<Vec2> pt{{0, 0}};
    CHECK(steiner_area(convex_hull(pt), 1.0) == doctest::Approx(pi));
    const std::vector<Vec2> seg{{0, 0}, {1, 0}};
    CHECK(steiner_area(convex_hull(seg), 0.5) == doctest::Approx(1.0 + 0.25 * pi));
    // the polygonal parallel body converges to the Steiner value from below
    const double poly_area = area(parallel_body(unit_square(), 1.0, 2048));
    CHECK(poly_area < steiner_area(unit_square(), 1.0));
    CHECK(poly_area == doctest::Approx(5.0 + pi).epsilon(1e-5));
}
