#pragma once

#include "hullwalk/geom2d.hpp"
#include "hullwalk/rng.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hullwalk {

/// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct Mat2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    static constexpr Mat2 identity(double s = 1.0) { return {s, 0.0, s}; }
    constexpr double trace() const { return xx + yy; }
    constexpr double det() const { return xx * yy - xy * xy; }
    constexpr Vec2 apply(Vec2 v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
    constexpr double quad(Vec2 v) const { return dot(v, apply(v)); }
    friend constexpr Mat2 operator*(double s, Mat2 m) { return {s * m.xx, s * m.xy, s * m.yy}; }
    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

bool is_psd(const Mat2& m, double tol = 1e-12);

/// Closed-form principal square root of a PSD matrix. Throws Error{NotPSD}.
Mat2 sqrt_psd(const Mat2& m);

namespace model {

/// +-e1, +-e2 with probability 1/4 each.
struct LatticeSRW {};
/// (+-1,0), (0,+-1), (-1,1), (1,-1) with probability 1/6 each.
struct Hex6 {};
/// Uniform unit-circle step plus a constant drift.
struct PearsonRayleigh {
    Vec2 drift;
};
struct Gaussian {
    Vec2 mean;
    Mat2 cov;
};
/// (1, +-1) with probability 1/2 each.
struct SpacetimeBinary {};
/// (1, xi) with xi standard normal.
struct SpacetimeGaussian {};
/// Radius (1-U)^(-1/alpha), uniform direction, plus drift.
struct ParetoDirection {
    double alpha = 1.5;
    Vec2 drift;
};

}  // namespace model

using IncrementModel = std::variant<model::LatticeSRW, model::Hex6, model::PearsonRayleigh, model::Gaussian,
                                    model::SpacetimeBinary, model::SpacetimeGaussian, model::ParetoDirection>;

/// Checks the model parameters (PSD covariance, alpha > 1, finite values).
void validate(const IncrementModel& m);

/// Analytic moments of one increment. Second-moment fields are NaN when
/// finite_variance is false; the drift split (sigma2_mu, sigma2_perp,
/// rho_cross) is NaN when mu = 0.
struct MomentSummary {
    Vec2 mu;
    Mat2 sigma;
    double sigma2 = 0.0;
    double sigma2_mu = 0.0;
    double sigma2_perp = 0.0;
    double det_sigma = 0.0;
    double rho_cross = 0.0;
    bool finite_variance = true;

    bool has_drift() const { return mu.x != 0.0 || mu.y != 0.0; }
};

MomentSummary moments(const IncrementModel& m);

/// Finite support as (point, probability) pairs; empty for continuous models.
struct Atom {
    Vec2 point;
    double prob;
};
std::vector<Atom> finite_support(const IncrementModel& m);

/// Draws increments of a model from one stream. Holds a precomputed
/// covariance root so the per-step cost stays small.
class IncrementSampler {
public:
    explicit IncrementSampler(const IncrementModel& m);
    Vec2 draw(RngStream& rng) const;

private:
    IncrementModel model_;
    Mat2 root_{};
};

struct WalkPath {
    std::vector<Vec2> positions;  // positions[0] == (0, 0)

    std::size_t steps() const { return positions.empty() ? 0 : positions.size() - 1; }
};

WalkPath sample_path(const IncrementModel& m, std::size_t n, RngStream& stream);

/// Partial sums of N(0, cov / grid_n) steps: Sigma^{1/2} b on a grid of [0,1].
WalkPath brownian_path(const Mat2& cov, std::size_t grid_n, RngStream& stream);

/// Planar Brownian bridge b(k/N) - (k/N) b(1); both endpoints are the origin.
WalkPath bridge_path(std::size_t grid_n, RngStream& stream);

/// Anisotropic drift scaling: (p . mu_hat / (n |mu|), p . mu_hat_perp / sqrt(n sigma2_perp)),
/// with mu_hat_perp the anticlockwise rotation of mu_hat.
Vec2 psi_scaling(Vec2 p, Vec2 mu, double sigma2_perp, std::size_t n);

/// G_0 = 0, G_n = (1/n) sum_{k=1..n} S_k.
WalkPath center_of_mass(const WalkPath& path);

/// Model grammar: lattice | hex6 | pr[:dx,dy] | gauss[:s11,s12,s22[,mx,my]]
///                | st-binary | st-gauss | pareto:alpha[,dx,dy]
IncrementModel parse_model(std::string_view spec);
/// Inverse of parse_model; doubles are written in shortest round-trip form.
std::string to_spec(const IncrementModel& m);

}  // namespace hullwalk
