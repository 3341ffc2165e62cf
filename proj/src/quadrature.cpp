#include "hullwalk/quadrature.hpp"

#include "hullwalk/error.hpp"

#include <cmath>

namespace hullwalk {

namespace {

struct Simpson {
    const std::function<double(double)>& f;
    QuadratureResult& out;
    int max_depth;

    double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (depth >= max_depth) {
            out.converged = false;
            out.error_estimate += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        if (std::abs(delta) <= 15.0 * tol) {
            out.error_estimate += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                                  int max_depth) {
    QuadratureResult out;
    if (a == b) return out;
    // Start from four panels so that an integrand that happens to vanish at
    // the first five nodes is not mistaken for zero.
    constexpr int kPanels = 4;
    Simpson s{f, out, max_depth};
    const double h = (b - a) / kPanels;
    double total = 0.0;
    double fa = f(a);
    for (int i = 0; i < kPanels; ++i) {
        const double lo = a + i * h;
        const double hi = i + 1 == kPanels ? b : a + (i + 1) * h;
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        const double fb = f(hi);
        const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += s.recurse(lo, hi, fa, fm, fb, whole, tol / kPanels, 0);
        fa = fb;
    }
    out.value = total;
    return out;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
    const QuadratureResult r = adaptive_simpson(f, a, b, tol, max_depth);
    if (!r.converged) throw Error(ErrorCode::NoConvergence, "adaptive Simpson hit its depth limit");
    return r.value;
}

}  // namespace hullwalk
