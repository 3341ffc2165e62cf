#include "hullwalk/walkgen.hpp"

#include "hullwalk/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hullwalk {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Vec2 unit_circle(RngStream& rng) {
    const double t = 2.0 * std::numbers::pi * rng.uniform();
    return {std::cos(t), std::sin(t)};
}

}  // namespace

bool is_psd(const Mat2& m, double tol) {
    if (!std::isfinite(m.xx) || !std::isfinite(m.xy) || !std::isfinite(m.yy)) return false;
    const double scale = std::max({std::abs(m.xx), std::abs(m.yy), std::abs(m.xy), 1.0});
    return m.xx >= -tol * scale && m.yy >= -tol * scale && m.det() >= -tol * scale * scale;
}

Mat2 sqrt_psd(const Mat2& m) {
    if (!is_psd(m)) throw Error(ErrorCode::NotPSD, "matrix is not positive semidefinite");
    const double s = std::sqrt(std::max(m.det(), 0.0));
    const double t = std::sqrt(std::max(m.trace() + 2.0 * s, 0.0));
    if (t == 0.0) return {};
    return {(m.xx + s) / t, m.xy / t, (m.yy + s) / t};
}

void validate(const IncrementModel& m) {
    auto finite = [](Vec2 v) {
        if (!is_finite(v)) throw Error(ErrorCode::NonFinite, "model drift must be finite");
    };
    std::visit(overloaded{
                   [&](const model::PearsonRayleigh& p) { finite(p.drift); },
                   [&](const model::Gaussian& g) {
                       finite(g.mean);
                       if (!is_psd(g.cov)) throw Error(ErrorCode::NotPSD, "gaussian covariance is not PSD");
                   },
                   [&](const model::ParetoDirection& p) {
                       finite(p.drift);
                       if (!(p.alpha > 1.0) || !std::isfinite(p.alpha)) {
                           throw Error(ErrorCode::InvalidArgument, "pareto alpha must exceed 1");
                       }
                   },
                   [](const auto&) {},
               },
               m);
}

MomentSummary moments(const IncrementModel& m) {
    validate(m);
    MomentSummary out;
    std::visit(overloaded{
                   [&](const model::LatticeSRW&) { out.sigma = Mat2::identity(0.5); },
                   [&](const model::Hex6&) { out.sigma = {2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0}; },
                   [&](const model::PearsonRayleigh& p) {
                       out.mu = p.drift;
                       out.sigma = Mat2::identity(0.5);
                   },
                   [&](const model::Gaussian& g) {
                       out.mu = g.mean;
                       out.sigma = g.cov;
                   },
                   [&](const model::SpacetimeBinary&) {
                       out.mu = {1.0, 0.0};
                       out.sigma = {0.0, 0.0, 1.0};
                   },
                   [&](const model::SpacetimeGaussian&) {
                       out.mu = {1.0, 0.0};
                       out.sigma = {0.0, 0.0, 1.0};
                   },
                   [&](const model::ParetoDirection& p) {
                       out.mu = p.drift;
                       if (p.alpha > 2.0) {
                           out.sigma = Mat2::identity(0.5 * p.alpha / (p.alpha - 2.0));
                       } else {
                           out.finite_variance = false;
                       }
                   },
               },
               m);

    if (!out.finite_variance) {
        out.sigma = {kNaN, kNaN, kNaN};
        out.sigma2 = out.sigma2_mu = out.sigma2_perp = out.det_sigma = out.rho_cross = kNaN;
        return out;
    }
    out.sigma2 = out.sigma.trace();
    out.det_sigma = std::max(out.sigma.det(), 0.0);
    if (out.has_drift()) {
        const Vec2 u = (1.0 / norm(out.mu)) * out.mu;
        const Vec2 w = perp(u);
        out.sigma2_mu = out.sigma.quad(u);
        out.sigma2_perp = out.sigma.quad(w);
        out.rho_cross = dot(u, out.sigma.apply(w));
    } else {
        out.sigma2_mu = out.sigma2_perp = out.rho_cross = kNaN;
    }
    return out;
}

std::vector<Atom> finite_support(const IncrementModel& m) {
    return std::visit(overloaded{
                          [](const model::LatticeSRW&) {
                              return std::vector<Atom>{{{1, 0}, 0.25}, {{-1, 0}, 0.25}, {{0, 1}, 0.25}, {{0, -1}, 0.25}};
                          },
                          [](const model::Hex6&) {
                              const double p = 1.0 / 6.0;
                              return std::vector<Atom>{{{1, 0}, p},  {{-1, 0}, p}, {{0, 1}, p},
                                                       {{0, -1}, p}, {{-1, 1}, p}, {{1, -1}, p}};
                          },
                          [](const model::SpacetimeBinary&) {
                              return std::vector<Atom>{{{1, 1}, 0.5}, {{1, -1}, 0.5}};
                          },
                          [](const auto&) { return std::vector<Atom>{}; },
                      },
                      m);
}

IncrementSampler::IncrementSampler(const IncrementModel& m) : model_(m) {
    validate(m);
    if (const auto* g = std::get_if<model::Gaussian>(&model_)) root_ = sqrt_psd(g->cov);
}

Vec2 IncrementSampler::draw(RngStream& rng) const {
    switch (model_.index()) {
        case 0: {
            static constexpr Vec2 kSteps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            return kSteps[rng.next_u64() >> 62];
        }
        case 1: {
            static constexpr Vec2 kSteps[6] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {-1, 1}, {1, -1}};
            return kSteps[rng.below(6)];
        }
        case 2:
            return unit_circle(rng) + std::get<model::PearsonRayleigh>(model_).drift;
        case 3: {
            const double a = rng.normal();
            const double b = rng.normal();
            return std::get<model::Gaussian>(model_).mean + root_.apply({a, b});
        }
        case 4:
            return {1.0, (rng.next_u64() >> 63) ? 1.0 : -1.0};
        case 5:
            return {1.0, rng.normal()};
        case 6: {
            const auto& p = std::get<model::ParetoDirection>(model_);
            const double radius = std::pow(1.0 - rng.uniform(), -1.0 / p.alpha);
            return radius * unit_circle(rng) + p.drift;
        }
    }
    return {};
}

WalkPath sample_path(const IncrementModel& m, std::size_t n, RngStream& stream) {
    const IncrementSampler sampler(m);
    WalkPath path;
    path.positions.reserve(n + 1);
    Vec2 pos{};
    path.positions.push_back(pos);
    for (std::size_t k = 0; k < n; ++k) {
        pos += sampler.draw(stream);
        path.positions.push_back(pos);
    }
    return path;
}

WalkPath brownian_path(const Mat2& cov, std::size_t grid_n, RngStream& stream) {
    if (grid_n < 1) throw Error(ErrorCode::InvalidArgument, "grid_n must be positive");
    const Mat2 root = (1.0 / std::sqrt(static_cast<double>(grid_n))) * sqrt_psd(cov);
    WalkPath path;
    path.positions.reserve(grid_n + 1);
    Vec2 pos{};
    path.positions.push_back(pos);
    for (std::size_t k = 0; k < grid_n; ++k) {
        const double a = stream.normal();
        const double b = stream.normal();
        pos += root.apply({a, b});
        path.positions.push_back(pos);
    }
    return path;
}

WalkPath bridge_path(std::size_t grid_n, RngStream& stream) {
    WalkPath path = brownian_path(Mat2::identity(), grid_n, stream);
    const Vec2 end = path.positions.back();
    const double n = static_cast<double>(grid_n);
    for (std::size_t k = 0; k < grid_n; ++k) {
        path.positions[k] -= (static_cast<double>(k) / n) * end;
    }
    path.positions.back() = {0.0, 0.0};
    return path;
}

Vec2 psi_scaling(Vec2 p, Vec2 mu, double sigma2_perp, std::size_t n) {
    const double speed = norm(mu);
    if (!(speed > 0.0)) throw Error(ErrorCode::ZeroDrift, "psi scaling needs a non-zero drift");
    if (!(sigma2_perp > 0.0)) throw Error(ErrorCode::ZeroPerpVariance, "psi scaling needs sigma2_perp > 0");
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "psi scaling needs n >= 1");
    const Vec2 u = (1.0 / speed) * mu;
    const double nn = static_cast<double>(n);
    return {dot(p, u) / (nn * speed), dot(p, perp(u)) / std::sqrt(nn * sigma2_perp)};
}

WalkPath center_of_mass(const WalkPath& path) {
    WalkPath out;
    out.positions.reserve(path.positions.size());
    Vec2 sum{};
    for (std::size_t k = 0; k < path.positions.size(); ++k) {
        if (k == 0) {
            out.positions.push_back({0.0, 0.0});
            continue;
        }
        sum += path.positions[k];
        out.positions.push_back((1.0 / static_cast<double>(k)) * sum);
    }
    return out;
}

}  // namespace hullwalk
