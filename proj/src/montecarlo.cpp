#include "hullwalk/montecarlo.hpp"

#include "hullwalk/error.hpp"
#include "hullwalk/parallel.hpp"

#include <array>
#include <cmath>

namespace hullwalk {

namespace {

constexpr std::uint64_t kBlock = 64;

template <class OnCheckpoint>
void run_replicate(const IncrementSampler& sampler, RngStream& rng, const std::vector<std::size_t>& checkpoints,
                   OnCheckpoint&& on_checkpoint) {
    IncrementalHull hull;
    Vec2 pos{};
    std::size_t k = 0;
    for (std::size_t j = 0; j < checkpoints.size(); ++j) {
        for (; k < checkpoints[j]; ++k) {
            pos += sampler.draw(rng);
            hull.insert(pos);
        }
        on_checkpoint(j, hull);
    }
}

double pick(const IncrementalHull& hull, Functional f) {
    switch (f) {
        case Functional::L: return hull.perimeter();
        case Functional::A: return hull.area();
        case Functional::R: return hull.inradius();
    }
    return 0.0;
}

}  // namespace

std::string_view to_string(Statistic s) {
    switch (s) {
        case Statistic::MeanL: return "meanL";
        case Statistic::VarL: return "varL";
        case Statistic::MeanA: return "meanA";
        case Statistic::VarA: return "varA";
        case Statistic::MeanR: return "meanR";
    }
    return "?";
}

std::vector<CheckpointSummary> estimate(const IncrementModel& model, std::size_t n, const CheckpointSchedule& sched,
                                        std::uint64_t replicates, std::uint64_t master_seed, ParallelOptions opts) {
    if (replicates < 2) throw Error(ErrorCode::InvalidReplicates, "estimate needs at least 2 replicates");
    const IncrementSampler sampler(model);
    const auto checkpoints = sched.resolve(n);
    const std::size_t nc = checkpoints.size();

    using Acc = std::array<MomentAccumulator, 3>;  // L, A, r
    const std::uint64_t blocks = (replicates + kBlock - 1) / kBlock;
    std::vector<std::vector<Acc>> partial(blocks, std::vector<Acc>(nc));

    parallel_for(blocks, resolve_threads(opts.threads), [&](std::size_t b) {
        auto& acc = partial[b];
        const std::uint64_t end = std::min(replicates, (b + 1) * kBlock);
        for (std::uint64_t i = b * kBlock; i < end; ++i) {
            RngStream rng(master_seed, i);
            run_replicate(sampler, rng, checkpoints, [&](std::size_t j, const IncrementalHull& hull) {
                const HullFunctionals f = hull.functionals();
                acc[j][0].add(f.L);
                acc[j][1].add(f.A);
                acc[j][2].add(f.r);
            });
        }
    });

    std::vector<Acc> total(nc);
    for (const auto& block : partial) {
        for (std::size_t j = 0; j < nc; ++j) {
            for (int s = 0; s < 3; ++s) total[j][s].merge(block[j][s]);
        }
    }

    std::vector<CheckpointSummary> rows;
    rows.reserve(nc);
    for (std::size_t j = 0; j < nc; ++j) {
        const std::size_t cp = checkpoints[j];
        auto make = [&](Statistic st, double v, double se) { return MonteCarloEstimate{cp, st, v, se, replicates}; };
        const auto& [L, A, r] = total[j];
        rows.push_back({cp, make(Statistic::MeanL, L.mean(), L.std_error_mean()),
                        make(Statistic::VarL, L.variance(), L.std_error_variance()),
                        make(Statistic::MeanA, A.mean(), A.std_error_mean()),
                        make(Statistic::VarA, A.variance(), A.std_error_variance()),
                        make(Statistic::MeanR, r.mean(), r.std_error_mean())});
    }
    return rows;
}

std::vector<MonteCarloEstimate> flatten(const std::vector<CheckpointSummary>& rows) {
    std::vector<MonteCarloEstimate> out;
    out.reserve(5 * rows.size());
    for (const auto& r : rows) {
        out.insert(out.end(), {r.mean_L, r.var_L, r.mean_A, r.var_A, r.mean_r});
    }
    return out;
}

std::vector<SampleSet> collect_samples_at(const IncrementModel& model, const std::vector<std::size_t>& checkpoints,
                                          std::uint64_t replicates, std::uint64_t master_seed, Functional functional,
                                          ParallelOptions opts) {
    if (replicates < 1) throw Error(ErrorCode::InvalidReplicates, "collect_samples needs at least 1 replicate");
    for (std::size_t j = 1; j < checkpoints.size(); ++j) {
        if (checkpoints[j] <= checkpoints[j - 1]) {
            throw Error(ErrorCode::InvalidSchedule, "checkpoints must be strictly increasing");
        }
    }
    const IncrementSampler sampler(model);
    std::vector<SampleSet> out(checkpoints.size());
    for (std::size_t j = 0; j < checkpoints.size(); ++j) {
        out[j].n = checkpoints[j];
        out[j].values.assign(replicates, 0.0);
    }
    parallel_for(replicates, resolve_threads(opts.threads), [&](std::size_t i) {
        RngStream rng(master_seed, i);
        run_replicate(sampler, rng, checkpoints, [&](std::size_t j, const IncrementalHull& hull) {
            out[j].values[i] = pick(hull, functional);
        });
    });
    return out;
}

SampleSet collect_samples(const IncrementModel& model, std::size_t n, std::uint64_t replicates,
                          std::uint64_t master_seed, Functional functional, ParallelOptions opts) {
    return std::move(collect_samples_at(model, {n}, replicates, master_seed, functional, opts).front());
}

CltResult clt_test(const IncrementModel& model, std::size_t n, std::uint64_t replicates, std::uint64_t master_seed,
                   ParallelOptions opts) {
    const MomentSummary m = moments(model);
    if (!m.finite_variance) throw Error(ErrorCode::InfiniteVariance, "CLT scaling needs finite variance");
    if (!m.has_drift()) throw Error(ErrorCode::ZeroDrift, "CLT for the perimeter needs a non-zero drift");
    if (!(m.sigma2_mu > 1e-14)) {
        throw Error(ErrorCode::DegenerateDrift,
                    "sigma2_mu = 0: increments are orthogonal to the drift, the Gaussian limit does not apply");
    }
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "CLT test needs n >= 1");
    const SampleSet samples = collect_samples(model, n, replicates, master_seed, Functional::L, opts);

    MomentAccumulator acc;
    for (double v : samples.values) acc.add(v);
    const double scale = std::sqrt(4.0 * m.sigma2_mu * static_cast<double>(n));

    CltResult out;
    out.standardized.reserve(samples.values.size());
    for (double v : samples.values) out.standardized.push_back((v - acc.mean()) / scale);
    out.D = ks_statistic(out.standardized, normal_cdf);
    out.threshold = ks_threshold_5pct(out.standardized.size());
    out.pass = out.D < out.threshold;
    return out;
}

LogSlopeFit variance_log_slope(const IncrementModel& model, const std::vector<std::size_t>& checkpoints,
                               std::uint64_t replicates, std::uint64_t master_seed, ParallelOptions opts) {
    if (checkpoints.size() < 2) throw Error(ErrorCode::InvalidArgument, "slope fit needs two checkpoints");
    const auto sets = collect_samples_at(model, checkpoints, replicates, master_seed, Functional::L, opts);
    LogSlopeFit fit;
    MomentAccumulator xs;
    for (const auto& s : sets) {
        MomentAccumulator acc;
        for (double v : s.values) acc.add(v);
        fit.n.push_back(s.n);
        fit.var_L.push_back(acc.variance());
        xs.add(std::log(static_cast<double>(s.n)));
    }
    double sxy = 0.0;
    double sxx = 0.0;
    double ybar = 0.0;
    for (double v : fit.var_L) ybar += v;
    ybar /= static_cast<double>(fit.var_L.size());
    for (std::size_t j = 0; j < fit.n.size(); ++j) {
        const double dx = std::log(static_cast<double>(fit.n[j])) - xs.mean();
        sxy += dx * (fit.var_L[j] - ybar);
        sxx += dx * dx;
    }
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xs.mean();
    return fit;
}

}  // namespace hullwalk
