#include "hullwalk/hullstream.hpp"

#include "hullwalk/error.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace hullwalk {

CheckpointSchedule CheckpointSchedule::geometric(std::size_t start, double ratio) {
    if (start < 1 || !(ratio > 1.0) || !std::isfinite(ratio)) {
        throw Error(ErrorCode::InvalidSchedule, "geometric schedule needs start >= 1 and ratio > 1");
    }
    return CheckpointSchedule(Geometric{start, ratio});
}

CheckpointSchedule CheckpointSchedule::explicit_steps(std::vector<std::size_t> steps) {
    for (std::size_t i = 1; i < steps.size(); ++i) {
        if (steps[i] <= steps[i - 1]) {
            throw Error(ErrorCode::InvalidSchedule, "explicit checkpoints must be strictly increasing");
        }
    }
    return CheckpointSchedule(Explicit{std::move(steps)});
}

CheckpointSchedule CheckpointSchedule::parse(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorCode::ParseError, "schedule must be geom:start,ratio or list:n1,n2,...");
    }
    const std::string_view kind = spec.substr(0, colon);
    std::string_view rest = spec.substr(colon + 1);
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = rest.find(',');
        items.push_back(rest.substr(0, comma));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    auto to_size = [&](std::string_view s) {
        std::size_t v = 0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
            throw Error(ErrorCode::ParseError, "bad integer '" + std::string(s) + "' in schedule");
        }
        return v;
    };
    if (kind == "geom") {
        if (items.size() != 2) throw Error(ErrorCode::ParseError, "geom schedule takes start,ratio");
        double ratio = 0.0;
        const auto [p, ec] = std::from_chars(items[1].data(), items[1].data() + items[1].size(), ratio);
        if (ec != std::errc{} || p != items[1].data() + items[1].size()) {
            throw Error(ErrorCode::ParseError, "bad ratio in schedule");
        }
        return geometric(to_size(items[0]), ratio);
    }
    if (kind == "list") {
        std::vector<std::size_t> steps;
        for (auto s : items) steps.push_back(to_size(s));
        return explicit_steps(std::move(steps));
    }
    throw Error(ErrorCode::ParseError, "unknown schedule kind '" + std::string(kind) + "'");
}

std::string CheckpointSchedule::to_spec() const {
    if (const auto* g = std::get_if<Geometric>(&kind_)) {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, g->ratio);
        return "geom:" + std::to_string(g->start) + "," + std::string(buf, res.ptr);
    }
    std::string out = "list:";
    const auto& steps = std::get<Explicit>(kind_).steps;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(steps[i]);
    }
    return out;
}

std::vector<std::size_t> CheckpointSchedule::resolve(std::size_t steps) const {
    if (const auto* e = std::get_if<Explicit>(&kind_)) {
        if (!e->steps.empty() && e->steps.back() > steps) {
            throw Error(ErrorCode::ScheduleOutOfRange,
                        "checkpoint " + std::to_string(e->steps.back()) + " exceeds path length " + std::to_string(steps));
        }
        return e->steps;
    }
    const auto& g = std::get<Geometric>(kind_);
    std::vector<std::size_t> out;
    for (double v = static_cast<double>(g.start); v < static_cast<double>(steps); v *= g.ratio) {
        const auto k = static_cast<std::size_t>(std::llround(v));
        if (k >= steps) break;
        if (out.empty() || k > out.back()) out.push_back(k);
    }
    out.push_back(steps);
    return out;
}

void IncrementalHull::Sum::add(double x) {
    const double t = value + x;
    if (std::abs(value) >= std::abs(x)) {
        comp += (value - t) + x;
    } else {
        comp += (x - t) + value;
    }
    value = t;
}

void IncrementalHull::Chain::add_edge(It a, It b, double sign) {
    const double dx = b->first - a->first;
    const double dy = b->second - a->second;
    length_.add(sign * std::sqrt(dx * dx + dy * dy));
    cross_.add(sign * (b->first * a->second - b->second * a->first));
}

void IncrementalHull::Chain::insert(double x, double y) {
    auto it = pts_.lower_bound(x);
    if (it != pts_.end() && it->first == x) {
        if (y <= it->second) return;
        // Same abscissa, higher point: drop the old vertex and insert afresh.
        const auto next = std::next(it);
        const bool has_prev = it != pts_.begin();
        const bool has_next = next != pts_.end();
        if (has_prev) add_edge(std::prev(it), it, -1.0);
        if (has_next) add_edge(it, next, -1.0);
        if (has_prev && has_next) add_edge(std::prev(it), next, 1.0);
        pts_.erase(it);
        it = next;
    }
    if (it != pts_.end() && it != pts_.begin()) {
        const auto prev = std::prev(it);
        const double ex = it->first - prev->first;
        const double ey = it->second - prev->second;
        if (ex * (y - prev->second) - ey * (x - prev->first) <= 0.0) return;  // on or under the chain
    }

    const auto p = pts_.emplace_hint(it, x, y);
    const bool has_prev = p != pts_.begin();
    const bool has_next = std::next(p) != pts_.end();
    if (has_prev && has_next) add_edge(std::prev(p), std::next(p), -1.0);
    if (has_prev) add_edge(std::prev(p), p, 1.0);
    if (has_next) add_edge(p, std::next(p), 1.0);

    auto not_above = [](It a, It b, It c) {
        return (b->first - a->first) * (c->second - a->second) - (b->second - a->second) * (c->first - a->first) >= 0.0;
    };
    while (true) {
        const auto b = std::next(p);
        if (b == pts_.end()) break;
        const auto c = std::next(b);
        if (c == pts_.end() || !not_above(p, b, c)) break;
        add_edge(p, b, -1.0);
        add_edge(b, c, -1.0);
        add_edge(p, c, 1.0);
        pts_.erase(b);
    }
    while (p != pts_.begin()) {
        const auto b = std::prev(p);
        if (b == pts_.begin()) break;
        const auto a = std::prev(b);
        if (!not_above(a, b, p)) break;
        add_edge(a, b, -1.0);
        add_edge(b, p, -1.0);
        add_edge(a, p, 1.0);
        pts_.erase(b);
    }
}

IncrementalHull::IncrementalHull() {
    upper_.insert(0.0, 0.0);
    lower_.insert(0.0, 0.0);
}

void IncrementalHull::insert(Vec2 p) {
    upper_.insert(p.x, p.y);
    lower_.insert(p.x, -p.y);
}

double IncrementalHull::perimeter() const {
    const auto& up = upper_.points();
    const auto& lo = lower_.points();
    const double left = up.begin()->second + lo.begin()->second;
    const double right = up.rbegin()->second + lo.rbegin()->second;
    return upper_.length() + lower_.length() + left + right;
}

double IncrementalHull::area() const {
    const auto& up = upper_.points();
    const auto& lo = lower_.points();
    const Vec2 upper_left{up.begin()->first, up.begin()->second};
    const Vec2 upper_right{up.rbegin()->first, up.rbegin()->second};
    const Vec2 lower_left{lo.begin()->first, -lo.begin()->second};
    const Vec2 lower_right{lo.rbegin()->first, -lo.rbegin()->second};
    const double twice =
        upper_.cross_sum() + lower_.cross_sum() + cross(lower_right, upper_right) + cross(upper_left, lower_left);
    return std::max(0.5 * twice, 0.0);
}

double IncrementalHull::inradius() const {
    const auto& up = upper_.points();
    const auto& lo = lower_.points();
    double best = std::numeric_limits<double>::infinity();
    auto edge = [&best](Vec2 a, Vec2 b) {
        const double len = norm(b - a);
        if (len > 0.0) best = std::min(best, cross(a, b) / len);
    };
    // Boundary in CCW order: lower chain left to right, right wall, upper
    // chain right to left, left wall.
    for (auto it = lo.begin(); std::next(it) != lo.end(); ++it) {
        const auto nx = std::next(it);
        edge({it->first, -it->second}, {nx->first, -nx->second});
    }
    edge({lo.rbegin()->first, -lo.rbegin()->second}, {up.rbegin()->first, up.rbegin()->second});
    for (auto it = up.rbegin(); std::next(it) != up.rend(); ++it) {
        const auto nx = std::next(it);
        edge({it->first, it->second}, {nx->first, nx->second});
    }
    edge({up.begin()->first, up.begin()->second}, {lo.begin()->first, -lo.begin()->second});
    if (!std::isfinite(best)) return 0.0;
    return std::max(best, 0.0);
}

FunctionalSeries functional_series(const WalkPath& path, const CheckpointSchedule& sched) {
    const auto checkpoints = sched.resolve(path.steps());
    FunctionalSeries out;
    IncrementalHull hull;
    std::size_t k = 0;
    for (const std::size_t n : checkpoints) {
        for (; k < n; ++k) hull.insert(path.positions[k + 1]);
        out.push(n, hull.functionals());
    }
    return out;
}

FunctionalSeries batch_series(const WalkPath& path, const CheckpointSchedule& sched) {
    const auto checkpoints = sched.resolve(path.steps());
    FunctionalSeries out;
    for (const std::size_t n : checkpoints) {
        const ConvexPolygon hull = convex_hull(std::span(path.positions).first(n + 1));
        out.push(n, {perimeter(hull), area(hull), dist_origin_to_boundary(hull)});
    }
    return out;
}

}  // namespace hullwalk
