#pragma once

#include <functional>

namespace hullwalk {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

/// Adaptive Simpson on [a, b] with absolute tolerance `tol`. Intervals that
/// hit `max_depth` are accepted as-is and flagged through `converged`.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                                  int max_depth = 50);

/// As adaptive_simpson, but throws Error{NoConvergence} if any interval
/// reached the depth limit.
double integrate(const std::function<double(double)>& f, double a, double b, double tol, int max_depth = 50);

}  // namespace hullwalk
