#include "hullwalk/error.hpp"
#include "hullwalk/hullstream.hpp"
#include "hullwalk/limits.hpp"
#include "hullwalk/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hullwalk {

namespace {

constexpr std::uint64_t kBlock = 16;

enum Slot { kL1, kA1, kAtilde, kRangeSq, kBridge, kSlots };

ScalarEstimate mean_of(const MomentAccumulator& a) { return {a.mean(), a.std_error_mean()}; }
ScalarEstimate var_of(const MomentAccumulator& a) { return {a.variance(), a.std_error_variance()}; }

}  // namespace

BrownianEstimates brownian_constant_estimates(std::size_t grid_n, std::uint64_t replicates,
                                              std::uint64_t master_seed, ParallelOptions opts) {
    if (grid_n < (std::size_t{1} << 14)) {
        throw Error(ErrorCode::InvalidArgument, "Brownian estimates need grid_n >= 2^14");
    }
    if (replicates < 2) throw Error(ErrorCode::InvalidReplicates, "Brownian estimates need at least 2 replicates");

    const std::uint64_t planar_seed = derive_seed(master_seed, 1);
    const std::uint64_t spacetime_seed = derive_seed(master_seed, 2);
    const std::uint64_t bridge_seed = derive_seed(master_seed, 3);
    const double grid = static_cast<double>(grid_n);

    using Acc = std::array<MomentAccumulator, kSlots>;
    const std::uint64_t blocks = (replicates + kBlock - 1) / kBlock;
    std::vector<Acc> partial(blocks);

    parallel_for(blocks, resolve_threads(opts.threads), [&](std::size_t b) {
        Acc& acc = partial[b];
        const std::uint64_t end = std::min(replicates, (b + 1) * kBlock);
        for (std::uint64_t i = b * kBlock; i < end; ++i) {
            {
                RngStream rng(planar_seed, i);
                const WalkPath path = brownian_path(Mat2::identity(), grid_n, rng);
                IncrementalHull hull;
                double lo = 0.0;
                double hi = 0.0;
                for (std::size_t k = 1; k < path.positions.size(); ++k) {
                    const Vec2 p = path.positions[k];
                    hull.insert(p);
                    lo = std::min(lo, p.x);
                    hi = std::max(hi, p.x);
                }
                acc[kL1].add(hull.perimeter());
                acc[kA1].add(hull.area());
                acc[kRangeSq].add((hi - lo) * (hi - lo));
            }
            {
                // (k, W_k) with unit Gaussian steps, rescaled to (k/N, W_k/sqrt N).
                RngStream rng(spacetime_seed, i);
                const WalkPath path = sample_path(model::SpacetimeGaussian{}, grid_n, rng);
                IncrementalHull hull;
                for (std::size_t k = 1; k < path.positions.size(); ++k) hull.insert(path.positions[k]);
                acc[kAtilde].add(hull.area() / (grid * std::sqrt(grid)));
            }
            {
                RngStream rng(bridge_seed, i);
                const WalkPath path = bridge_path(grid_n, rng);
                IncrementalHull hull;
                for (std::size_t k = 1; k < path.positions.size(); ++k) hull.insert(path.positions[k]);
                acc[kBridge].add(hull.perimeter());
            }
        }
    });

    Acc total;
    for (const Acc& block : partial) {
        for (int s = 0; s < kSlots; ++s) total[s].merge(block[s]);
    }

    BrownianEstimates out;
    out.grid_n = grid_n;
    out.replicates = replicates;
    out.E_l1 = mean_of(total[kL1]);
    out.Var_l1 = var_of(total[kL1]);
    out.E_a1 = mean_of(total[kA1]);
    out.Var_a1 = var_of(total[kA1]);
    out.E_atilde1 = mean_of(total[kAtilde]);
    out.Var_atilde1 = var_of(total[kAtilde]);
    out.E_r1_sq = mean_of(total[kRangeSq]);
    out.E_bridge_l1 = mean_of(total[kBridge]);
    out.Var_bridge_l1 = var_of(total[kBridge]);
    return out;
}

}  // namespace hullwalk
