#include "hullwalk/limits.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace hullwalk;
using hullwalk::test::error_code;
using std::numbers::pi;

namespace {

double binom(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// E max(0, T_1..T_n) for the fair +-1 walk by enumerating all 2^n paths.
double enumerated_max(int n) {
    double total = 0;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        int t = 0;
        int best = 0;
        for (int i = 0; i < n; ++i) {
            t += (bits >> i) & 1u ? 1 : -1;
            best = std::max(best, t);
        }
        total += best;
    }
    return total / static_cast<double>(1u << n);
}

// E T_k^+ for the fair +-1 walk from the binomial law.
double plus_part(int k) {
    double s = 0;
    for (int j = 0; j <= k; ++j) s += std::max(0, 2 * j - k) * binom(k, j);
    return s / std::pow(2.0, k);
}

double find(const std::vector<NamedValue>& v, const std::string& name) {
    for (const auto& c : v) {
        if (c.name == name) return c.value;
    }
    FAIL("missing constant " << name);
    return NAN;
}

bool has(const std::vector<NamedValue>& v, const std::string& name) {
    return std::any_of(v.begin(), v.end(), [&](const NamedValue& c) { return c.name == name; });
}

}  // namespace

TEST_CASE("sw_expected_perimeter") {
    const std::vector<double> one{1.0};
    CHECK(sw_expected_perimeter(one) == doctest::Approx(2.0));
    const auto nm = exact_norm_means(model::LatticeSRW{}, 2);
    CHECK(sw_expected_perimeter(nm) == doctest::Approx(enumerate_exact(model::LatticeSRW{}, 2).EL).epsilon(1e-12));
    const std::vector<double> gauss{std::sqrt(pi / 2)};
    CHECK(sw_expected_perimeter(gauss) == doctest::Approx(std::sqrt(2 * pi)));
    CHECK(error_code([] { sw_expected_perimeter({}); }) == ErrorCode::EmptyInput);
}

TEST_CASE("kac_expected_max") {
    const std::vector<double> p1{plus_part(1)};
    CHECK(kac_expected_max(p1) == doctest::Approx(0.5));
    const std::vector<double> p2{plus_part(1), plus_part(2)};
    CHECK(kac_expected_max(p2) == doctest::Approx(0.75));
    CHECK(enumerated_max(2) == doctest::Approx(0.75));
    const std::vector<double> zeros(5, 0.0);
    CHECK(kac_expected_max(zeros) == 0.0);
    std::vector<double> parts;
    for (int n = 1; n <= 12; ++n) {
        parts.push_back(plus_part(n));
        CHECK(std::abs(kac_expected_max(parts) - enumerated_max(n)) < 1e-12);
    }
    CHECK(error_code([] { kac_expected_max({}); }) == ErrorCode::EmptyInput);
}

TEST_CASE("bnb_expected_area") {
    auto lattice = [](std::size_t m, std::size_t k) { return exact_triangle_mean(model::LatticeSRW{}, m, k); };
    CHECK(bnb_expected_area(lattice, 2) == doctest::Approx(0.25));
    // (1, xi) steps: E T(Z_1, Z_2) = E|xi_2 - xi_1| / 2 = 1/sqrt(pi)
    auto st = [](std::size_t, std::size_t) { return 1.0 / std::sqrt(pi); };
    CHECK(bnb_expected_area(st, 2) == doctest::Approx(1.0 / std::sqrt(pi)));
    CHECK(error_code([&] { bnb_expected_area(st, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("gaussian_spacetime_area_exact and partial_sum_pi") {
    CHECK(gaussian_spacetime_area_exact(2) == doctest::Approx(1.0 / std::sqrt(pi)));
    // the same double sum written out independently
    double direct = 0;
    for (int k = 2; k <= 7; ++k) {
        for (int m = 1; m < k; ++m) direct += std::sqrt(k / (double(m) * (k - m)));
    }
    CHECK(gaussian_spacetime_area_exact(7) == doctest::Approx(direct / std::sqrt(2 * pi)));
    const double n = 1e4;
    CHECK(gaussian_spacetime_area_exact(10000) / std::pow(n, 1.5) ==
          doctest::Approx(std::sqrt(2 * pi) / 3).epsilon(0.02));
    CHECK(partial_sum_pi(2) == doctest::Approx(1.0));
    // The gap to pi shrinks like 1/sqrt(k); reference values from a separate
    // double-precision summation in Python.
    CHECK(partial_sum_pi(100) - pi == doctest::Approx(-0.29227897859118857).epsilon(1e-9));
    CHECK(partial_sum_pi(1000000) - pi == doctest::Approx(-0.002920709225554763).epsilon(1e-6));
    CHECK(std::abs(partial_sum_pi(1000000) - pi) < 0.005);
}

TEST_CASE("expected_norm_gaussian") {
    CHECK(expected_norm_gaussian(Mat2::identity()).value == doctest::Approx(std::sqrt(pi / 2)).epsilon(1e-9));
    CHECK(expected_norm_gaussian(Mat2::identity(0.5)).value == doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-9));
    CHECK(expected_norm_gaussian(Mat2{1, 0, 0}).value == doctest::Approx(std::sqrt(2 / pi)).epsilon(1e-9));
    for (const Mat2 s : {Mat2{1, 0.3, 0.4}, Mat2{2, -1, 1}, Mat2{0.1, 0, 5}, Mat2{1, 1, 1}}) {
        const auto e = expected_norm_gaussian(s);
        CHECK(e.lower <= e.value);
        CHECK(e.value <= e.upper);
    }
    CHECK(error_code([] { expected_norm_gaussian(Mat2{1, 2, 1}); }) == ErrorCode::NotPSD);
}

TEST_CASE("limit_constants") {
    const auto zero = limit_constants(moments(model::PearsonRayleigh{}));
    CHECK(find(zero, "4E_norm_Y") == doctest::Approx(2 * std::sqrt(pi)));
    CHECK(find(zero, "pi_over_2_sqrt_det") == doctest::Approx(pi / 4));
    CHECK_FALSE(has(zero, "2norm_mu"));
    const auto d36 = limit_constants(moments(model::PearsonRayleigh{{0.36, 0}}));
    CHECK(find(d36, "2norm_mu") == doctest::Approx(0.72));
    CHECK_FALSE(has(d36, "4E_norm_Y"));
    const auto d40 = limit_constants(moments(model::PearsonRayleigh{{0.4, 0}}));
    CHECK(find(d40, "area_drift_const") == doctest::Approx(0.4 * std::sqrt(pi) / 3));
    CHECK(find(d40, "ss_bound") == doctest::Approx(pi * pi / 2));
    CHECK(error_code([] { limit_constants(moments(model::ParetoDirection{})); }) == ErrorCode::InfiniteVariance);
}

TEST_CASE("variance_bounds") {
    const auto b = variance_bounds(2.0, true);
    REQUIRE(b.u0_low_identity.has_value());
    CHECK(b.u0_low == doctest::Approx(2.65e-3).epsilon(0.005));
    CHECK(b.u0_high == doctest::Approx(pi * pi));
    CHECK(b.v0_low == doctest::Approx(8.15e-7).epsilon(0.005));
    CHECK(b.v0_high == doctest::Approx(16 * std::log(2) * std::log(2) - pi * pi / 4));
    CHECK(b.v0_high == doctest::Approx(5.22).epsilon(0.002));
    CHECK(b.vplus_low == doctest::Approx(1.44e-6).epsilon(0.005));
    CHECK(b.vplus_high == doctest::Approx(4 * std::log(2) - 2 * pi / 9));
    CHECK(b.u0_low > 0);
    CHECK(b.v0_low > 0);
    CHECK(b.vplus_low > 0);
    const auto g = variance_bounds(1.0, false);
    CHECK_FALSE(g.u0_low_identity.has_value());
    CHECK(g.u0_low == g.u0_low_general);
}

TEST_CASE("quadrature constants") {
    // Independent evaluation of the same double integral with
    // scipy.integrate.dblquad (epsabs 1e-10): 26.2090569.
    const double rs = rogers_shepp_second_moment();
    CHECK(rs == doctest::Approx(26.2090569).epsilon(1e-6));
    const auto b = variance_bounds(2.0, true);
    CHECK(rs - 8 * pi > b.u0_low);
    CHECK(rs - 8 * pi < b.u0_high);
    CHECK(error_code([] { rogers_shepp_second_moment(1e-8); }) == ErrorCode::InvalidArgument);

    CHECK(std::abs(sine_integral(pi) - 1.85193705198247) < 1e-9);
    CHECK(std::abs(goldman_bridge_variance() - 0.34755) < 1e-3);
    CHECK(goldman_bridge_variance() > 0);
}

TEST_CASE("brownian constants") {
    CHECK(BrownianConstants::E_l1 == doctest::Approx(5.0132565));
    CHECK(BrownianConstants::E_a1 == doctest::Approx(pi / 2));
    CHECK(BrownianConstants::E_atilde1 == doctest::Approx(0.8355443));
    CHECK(BrownianConstants::E_sup_w == doctest::Approx(0.7978846));
    CHECK(BrownianConstants::E_range_sq == doctest::Approx(2.7725887));

    const auto e = brownian_constant_estimates(1 << 14, 64, 3);
    CHECK(e.replicates == 64);
    CHECK(std::abs(e.E_l1.value - BrownianConstants::E_l1) < 5 * e.E_l1.std_error);
    CHECK(std::abs(e.E_a1.value - BrownianConstants::E_a1) < 5 * e.E_a1.std_error);
    CHECK(e.Var_l1.value > 0);
    CHECK(error_code([] { brownian_constant_estimates(1000, 64, 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("assemble_report") {
    const auto ok = assemble_report({{"c", {2.0, 0.05}}}, {{"c", 2.0}}, {});
    REQUIRE(ok.size() == 1);
    CHECK(ok[0].verdict == Verdict::Consistent);
    const auto bad = assemble_report({{"b", {3.0, 0.01}}}, {}, {{"b", 0.0, 2.0}});
    CHECK(bad[0].verdict == Verdict::Violated);
    const auto none = assemble_report({}, {{"c", 2.0}}, {});
    CHECK(none[0].verdict == Verdict::Untested);
    CHECK(to_string(Verdict::Violated) == "violated");
    CHECK(error_code([] { assemble_report({{"x", {1, 1}}}, {{"c", 2.0}}, {}); }) == ErrorCode::MismatchedQuantities);
    CHECK(error_code([] { assemble_report({}, {{"c", 2.0}}, {{"c", 3.0, 4.0}}); }) == ErrorCode::InvalidArgument);
    // an estimate within 5 s.e. of a bound is not a violation
    const auto edge = assemble_report({{"b", {2.4, 0.1}}}, {}, {{"b", std::nullopt, 2.0}});
    CHECK(edge[0].verdict == Verdict::Consistent);
}
