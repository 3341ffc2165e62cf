#pragma once

#include "hullwalk/geom2d.hpp"
#include "hullwalk/walkgen.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hullwalk {

class CheckpointSchedule {
public:
    struct Geometric {
        std::size_t start = 10;
        double ratio = 1.25;
    };
    struct Explicit {
        std::vector<std::size_t> steps;
    };

    CheckpointSchedule() : kind_(Geometric{}) {}
    static CheckpointSchedule geometric(std::size_t start, double ratio);
    static CheckpointSchedule explicit_steps(std::vector<std::size_t> steps);
    /// "geom:start,ratio" or "list:n1,n2,...".
    static CheckpointSchedule parse(std::string_view spec);
    std::string to_spec() const;

    /// Concrete checkpoints for a path of `steps` steps. Geometric schedules
    /// are rounded, deduplicated and always end at `steps`. Throws
    /// Error{ScheduleOutOfRange} if an explicit checkpoint exceeds `steps`.
    std::vector<std::size_t> resolve(std::size_t steps) const;

private:
    explicit CheckpointSchedule(std::variant<Geometric, Explicit> k) : kind_(std::move(k)) {}
    std::variant<Geometric, Explicit> kind_;
};

struct HullFunctionals {
    double L = 0.0;
    double A = 0.0;
    double r = 0.0;
};

struct FunctionalSeries {
    std::vector<std::size_t> checkpoints;
    std::vector<double> L;
    std::vector<double> A;
    std::vector<double> r;

    void push(std::size_t n, const HullFunctionals& f) {
        checkpoints.push_back(n);
        L.push_back(f.L);
        A.push_back(f.A);
        r.push_back(f.r);
    }
};

/// Insertion-only convex hull of a growing point set that contains the
/// origin. Upper and lower chains live in ordered maps keyed by x; perimeter
/// and area are running (compensated) sums of edge terms, so each insertion
/// costs O(log h) amortised. The inradius about the origin is computed on
/// demand in O(h).
class IncrementalHull {
public:
    /// Starts with the single point (0, 0).
    IncrementalHull();

    void insert(Vec2 p);
    double perimeter() const;
    double area() const;
    /// Distance from the origin to the hull boundary.
    double inradius() const;
    HullFunctionals functionals() const { return {perimeter(), area(), inradius()}; }
    std::size_t vertex_count() const { return upper_.size() + lower_.size(); }

private:
    struct Sum {
        double value = 0.0;
        double comp = 0.0;
        void add(double x);
        double get() const { return value + comp; }
    };

    /// Upper hull of the stored points (y already reflected for the lower
    /// chain). Keeps, per edge (a, b) with a left of b, the length and the
    /// cross term cross(b, a).
    class Chain {
    public:
        void insert(double x, double y);
        std::size_t size() const { return pts_.size(); }
        double length() const { return length_.get(); }
        double cross_sum() const { return cross_.get(); }
        const std::map<double, double>& points() const { return pts_; }

    private:
        using It = std::map<double, double>::iterator;
        void add_edge(It a, It b, double sign);

        std::map<double, double> pts_;
        Sum length_;
        Sum cross_;
    };

    Chain upper_;
    Chain lower_;
};

/// Perimeter, area and inradius of hull(S_0..S_n) at each checkpoint in one
/// pass over the path.
FunctionalSeries functional_series(const WalkPath& path, const CheckpointSchedule& sched);

/// Reference implementation: recomputes the hull from scratch at every
/// checkpoint with convex_hull().
FunctionalSeries batch_series(const WalkPath& path, const CheckpointSchedule& sched);

}  // namespace hullwalk
