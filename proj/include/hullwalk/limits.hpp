#pragma once

#include "hullwalk/montecarlo.hpp"
#include "hullwalk/walkgen.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hullwalk {

// ---------------------------------------------------------------------------
// Exact expectation identities

/// 2 sum_{k=1..n} E||S_k|| / k, given E||S_k|| for k = 1..n.
double sw_expected_perimeter(std::span<const double> norm_means);

/// sum_{k=1..n} E[T_k^+] / k: the expected maximum of a one-dimensional walk
/// (including the starting value 0).
double kac_expected_max(std::span<const double> plus_part_means);

/// sum_{k=2..n} sum_{m=1..k-1} E T(S_m, S_k - S_m) / (m (k - m)).
double bnb_expected_area(const std::function<double(std::size_t m, std::size_t k)>& triangle_mean, std::size_t n);

/// E A_n for the (1, N(0,1)) space-time walk:
/// (2 pi)^{-1/2} sum_{k=2..n} sum_{m=1..k-1} sqrt(k / (m (k - m))).
double gaussian_spacetime_area_exact(std::size_t n);

/// sum_{m=1..k-1} 1 / sqrt(m (k - m)); tends to pi.
double partial_sum_pi(std::size_t k);

// ---------------------------------------------------------------------------
// Limit constants and bounds

struct NormExpectation {
    double value = 0.0;
    double lower = 0.0;  // sqrt(tr Sigma / pi)
    double upper = 0.0;  // sqrt(tr Sigma)
};

/// E||Y|| for Y ~ N(0, Sigma) from the circle integral
/// (8 pi)^{-1/2} int ||Sigma^{1/2} e|| de, to absolute tolerance 1e-8.
NormExpectation expected_norm_gaussian(const Mat2& sigma);

struct NamedValue {
    std::string name;
    double value = 0.0;
};

/// Limits implied by the increment moments. Drift models give 2norm_mu,
/// 4sigma2_mu and area_drift_const; zero-drift models give 4E_norm_Y and
/// pi_over_2_sqrt_det; both give ss_bound. Throws Error{InfiniteVariance}.
std::vector<NamedValue> limit_constants(const MomentSummary& m);

struct VarianceBounds {
    double u0_low = 0.0;  // general bound times tr Sigma (sharper one if identity)
    double u0_high = 0.0;
    double u0_low_general = 0.0;
    std::optional<double> u0_low_identity;
    double v0_low = 0.0;
    double v0_high = 0.0;
    double vplus_low = 0.0;
    double vplus_high = 0.0;
};

VarianceBounds variance_bounds(double trace_sigma, bool is_identity);

/// E[l_1^2] for planar Brownian motion from the double integral
/// 4 pi int_{-pi/2}^{pi/2} d theta int_0^inf du cos theta cosh(u theta)
///   / sinh(u pi/2) tanh((2 theta + pi) u / 4).
/// Throws Error{NoConvergence}.
double rogers_shepp_second_moment(double tol = 1e-6);

/// Si(x) = int_0^x sin t / t dt.
double sine_integral(double x);

/// (pi^2/6)(2 pi Si(pi) - 2 - 3 pi): variance of the hull perimeter of the
/// planar Brownian bridge.
double goldman_bridge_variance();

/// Closed-form moments of unit-time Brownian hull functionals.
struct BrownianConstants {
    static inline const double E_l1 = std::sqrt(8.0 * std::numbers::pi);
    static constexpr double E_a1 = std::numbers::pi / 2.0;
    static inline const double E_atilde1 = std::sqrt(2.0 * std::numbers::pi) / 3.0;
    static inline const double E_sup_w = std::sqrt(2.0 / std::numbers::pi);
    static inline const double E_range_sq = 4.0 * std::numbers::ln2;
};

struct ScalarEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct BrownianEstimates {
    std::size_t grid_n = 0;
    std::uint64_t replicates = 0;
    ScalarEstimate E_l1, Var_l1;            // perimeter of hull(b[0,1])
    ScalarEstimate E_a1, Var_a1;            // area of hull(b[0,1])
    ScalarEstimate E_atilde1, Var_atilde1;  // area of hull{(t, w(t))}
    ScalarEstimate E_r1_sq;                 // squared range of one coordinate
    ScalarEstimate E_bridge_l1, Var_bridge_l1;
};

/// Monte Carlo over discretised planar Brownian motion, space-time Brownian
/// motion and the planar bridge. Needs grid_n >= 2^14.
BrownianEstimates brownian_constant_estimates(std::size_t grid_n, std::uint64_t replicates,
                                              std::uint64_t master_seed, ParallelOptions opts = {});

// ---------------------------------------------------------------------------
// Reports

enum class Verdict { Consistent, Violated, Untested };
std::string_view to_string(Verdict v);

struct LimitReport {
    std::string quantity;
    std::optional<double> theoretical;
    std::optional<double> bound_low;
    std::optional<double> bound_high;
    std::optional<ScalarEstimate> estimate;
    Verdict verdict = Verdict::Untested;
};

struct NamedEstimate {
    std::string name;
    ScalarEstimate estimate;
};

struct NamedBounds {
    std::string name;
    std::optional<double> low;
    std::optional<double> high;
};

/// Verdict for one quantity: untested without an estimate; violated when
/// estimate +- 5 s.e. excludes the theoretical value or leaves the bounds.
Verdict judge(const std::optional<ScalarEstimate>& est, const std::optional<double>& theoretical,
              const std::optional<double>& low, const std::optional<double>& high);

/// One report per quantity named in `constants` or `bounds` (constants
/// first). Throws Error{MismatchedQuantities} for an estimate with no
/// matching quantity.
std::vector<LimitReport> assemble_report(const std::vector<NamedEstimate>& estimates,
                                         const std::vector<NamedValue>& constants,
                                         const std::vector<NamedBounds>& bounds);

}  // namespace hullwalk
