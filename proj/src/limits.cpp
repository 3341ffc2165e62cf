#include "hullwalk/limits.hpp"

#include "hullwalk/error.hpp"
#include "hullwalk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hullwalk {

using std::numbers::pi;

double sw_expected_perimeter(std::span<const double> norm_means) {
    if (norm_means.empty()) throw Error(ErrorCode::EmptyInput, "need E||S_k|| for k = 1..n, n >= 1");
    double total = 0.0;
    for (std::size_t k = 1; k <= norm_means.size(); ++k) total += norm_means[k - 1] / static_cast<double>(k);
    return 2.0 * total;
}

double kac_expected_max(std::span<const double> plus_part_means) {
    if (plus_part_means.empty()) throw Error(ErrorCode::EmptyInput, "need E T_k^+ for k = 1..n, n >= 1");
    double total = 0.0;
    for (std::size_t k = 1; k <= plus_part_means.size(); ++k) total += plus_part_means[k - 1] / static_cast<double>(k);
    return total;
}

double bnb_expected_area(const std::function<double(std::size_t, std::size_t)>& triangle_mean, std::size_t n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "area formula needs n >= 2");
    double total = 0.0;
    for (std::size_t k = 2; k <= n; ++k) {
        for (std::size_t m = 1; m < k; ++m) {
            total += triangle_mean(m, k) / (static_cast<double>(m) * static_cast<double>(k - m));
        }
    }
    return total;
}

double partial_sum_pi(std::size_t k) {
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "partial_sum_pi needs k >= 2");
    const double kk = static_cast<double>(k);
    double total = 0.0;
    for (std::size_t m = 1; m < k; ++m) {
        const double mm = static_cast<double>(m);
        total += 1.0 / std::sqrt(mm * (kk - mm));
    }
    return total;
}

double gaussian_spacetime_area_exact(std::size_t n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "area formula needs n >= 2");
    double total = 0.0;
    for (std::size_t k = 2; k <= n; ++k) {
        total += std::sqrt(static_cast<double>(k)) * partial_sum_pi(k);
    }
    return total / std::sqrt(2.0 * pi);
}

NormExpectation expected_norm_gaussian(const Mat2& sigma) {
    if (!is_psd(sigma)) throw Error(ErrorCode::NotPSD, "covariance is not positive semidefinite");
    auto integrand = [&](double t) {
        const Vec2 e{std::cos(t), std::sin(t)};
        return std::sqrt(std::max(sigma.quad(e), 0.0));
    };
    // The integrand has period pi.
    const double half = integrate(integrand, 0.0, pi, 1e-10);
    const double tr = std::max(sigma.trace(), 0.0);
    return {2.0 * half / std::sqrt(8.0 * pi), std::sqrt(tr / pi), std::sqrt(tr)};
}

std::vector<NamedValue> limit_constants(const MomentSummary& m) {
    if (!m.finite_variance) throw Error(ErrorCode::InfiniteVariance, "limit constants need finite variance");
    std::vector<NamedValue> out;
    if (m.has_drift()) {
        const double speed = norm(m.mu);
        out.push_back({"2norm_mu", 2.0 * speed});
        out.push_back({"4sigma2_mu", 4.0 * m.sigma2_mu});
        out.push_back({"area_drift_const", speed * std::sqrt(2.0 * pi * m.sigma2_perp) / 3.0});
    } else {
        out.push_back({"4E_norm_Y", 4.0 * expected_norm_gaussian(m.sigma).value});
        out.push_back({"pi_over_2_sqrt_det", 0.5 * pi * std::sqrt(m.det_sigma)});
    }
    out.push_back({"ss_bound", 0.5 * pi * pi * m.sigma2});
    return out;
}

VarianceBounds variance_bounds(double trace_sigma, bool is_identity) {
    if (!(trace_sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "trace must be non-negative");
    VarianceBounds b;
    b.u0_low_general = 263.0 / 1080.0 * std::pow(pi, -1.5) * std::exp(-144.0 / 25.0) * trace_sigma;
    b.u0_low = b.u0_low_general;
    b.u0_high = 0.5 * pi * pi * trace_sigma;
    if (is_identity) {
        b.u0_low_identity = 0.4 * (1.0 - 8.0 / (25.0 * pi)) * std::exp(-25.0 * pi / 16.0);
        b.u0_low = std::max(b.u0_low, *b.u0_low_identity);
    }
    const double ln2 = std::numbers::ln2;
    const double v0_core = std::exp(-7.0 * pi * pi / 12.0) - std::exp(-21.0 * pi * pi / 4.0) / 3.0;
    b.v0_low = 4.0 / 49.0 * v0_core * v0_core;
    b.v0_high = 16.0 * ln2 * ln2 - pi * pi / 4.0;
    b.vplus_low = 2.0 / 225.0 * (std::exp(-25.0 * pi / 9.0) - std::exp(-25.0 * pi) / 3.0);
    b.vplus_high = 4.0 * ln2 - 2.0 * pi / 9.0;
    return b;
}

double rogers_shepp_second_moment(double tol) {
    if (!(tol >= 1e-6)) throw Error(ErrorCode::InvalidArgument, "tolerance must be at least 1e-6");
    const double inner_tol = 1e-3 * tol;
    // Integrand of the u-integral; cosh/sinh rewritten with decaying
    // exponentials so large u cannot overflow.
    auto kernel = [](double u, double theta) {
        if (u == 0.0) return (2.0 * theta + pi) / (2.0 * pi);
        const double a = std::abs(theta);
        const double ratio = (std::exp(u * (a - 0.5 * pi)) + std::exp(-u * (a + 0.5 * pi))) / -std::expm1(-u * pi);
        return ratio * std::tanh((2.0 * theta + pi) * u / 4.0);
    };
    // With eps = pi/2 - |theta| and u = t / eps the kernel decays like e^{-t},
    // so the t-range can be truncated uniformly in theta.
    const double t_max = std::log(1.0 / inner_tol) + 10.0;
    bool converged = true;
    auto outer = [&](double theta) {
        const double eps = 0.5 * pi - std::abs(theta);
        const QuadratureResult r =
            adaptive_simpson([&](double t) { return kernel(t / eps, theta); }, 0.0, t_max, inner_tol, 60);
        converged = converged && r.converged;
        return std::cos(theta) / eps * r.value;
    };
    constexpr double kEdge = 1e-9;
    const QuadratureResult r = adaptive_simpson(outer, -0.5 * pi + kEdge, 0.5 * pi - kEdge, tol / (4.0 * pi), 40);
    if (!converged || !r.converged) throw Error(ErrorCode::NoConvergence, "Rogers-Shepp quadrature did not converge");
    return 4.0 * pi * r.value;
}

double sine_integral(double x) {
    return integrate([](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }, 0.0, x, 1e-13);
}

double goldman_bridge_variance() { return pi * pi / 6.0 * (2.0 * pi * sine_integral(pi) - 2.0 - 3.0 * pi); }

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Consistent: return "consistent";
        case Verdict::Violated: return "violated";
        case Verdict::Untested: return "untested";
    }
    return "?";
}

Verdict judge(const std::optional<ScalarEstimate>& est, const std::optional<double>& theoretical,
              const std::optional<double>& low, const std::optional<double>& high) {
    if (!est) return Verdict::Untested;
    const double margin = 5.0 * est->std_error;
    if (theoretical && std::abs(est->value - *theoretical) > margin) return Verdict::Violated;
    if (low && est->value + margin < *low) return Verdict::Violated;
    if (high && est->value - margin > *high) return Verdict::Violated;
    return Verdict::Consistent;
}

std::vector<LimitReport> assemble_report(const std::vector<NamedEstimate>& estimates,
                                         const std::vector<NamedValue>& constants,
                                         const std::vector<NamedBounds>& bounds) {
    std::vector<LimitReport> out;
    auto find_report = [&](const std::string& name) -> LimitReport* {
        for (auto& r : out) {
            if (r.quantity == name) return &r;
        }
        return nullptr;
    };
    for (const auto& c : constants) {
        if (find_report(c.name)) throw Error(ErrorCode::MismatchedQuantities, "duplicate constant " + c.name);
        out.push_back({c.name, c.value, std::nullopt, std::nullopt, std::nullopt, Verdict::Untested});
    }
    for (const auto& b : bounds) {
        LimitReport* r = find_report(b.name);
        if (!r) {
            out.push_back({b.name, std::nullopt, std::nullopt, std::nullopt, std::nullopt, Verdict::Untested});
            r = &out.back();
        }
        r->bound_low = b.low;
        r->bound_high = b.high;
        if (r->theoretical && ((b.low && *b.low > *r->theoretical) || (b.high && *b.high < *r->theoretical))) {
            throw Error(ErrorCode::InvalidArgument, "bounds for " + b.name + " exclude its theoretical value");
        }
    }
    for (const auto& e : estimates) {
        LimitReport* r = find_report(e.name);
        if (!r) throw Error(ErrorCode::MismatchedQuantities, "no theoretical value or bound for " + e.name);
        r->estimate = e.estimate;
    }
    for (auto& r : out) r.verdict = judge(r.estimate, r.theoretical, r.bound_low, r.bound_high);
    return out;
}

}  // namespace hullwalk
