#pragma once

#include "hullwalk/hullstream.hpp"
#include "hullwalk/stats.hpp"
#include "hullwalk/walkgen.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace hullwalk {

enum class Statistic { MeanL, VarL, MeanA, VarA, MeanR };
std::string_view to_string(Statistic s);

struct MonteCarloEstimate {
    std::size_t n = 0;
    Statistic statistic = Statistic::MeanL;
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t replicates = 0;
};

/// All statistics at one checkpoint.
struct CheckpointSummary {
    std::size_t n = 0;
    MonteCarloEstimate mean_L, var_L, mean_A, var_A, mean_r;
};

struct ParallelOptions {
    unsigned threads = 0;  // 0: hardware concurrency, capped by HULLWALK_THREADS
};

/// Replicate i draws from RngStream(master_seed, i). Replicates are reduced
/// in fixed blocks merged in index order, so the output is bitwise identical
/// for any worker count. Throws Error{InvalidReplicates} if replicates < 2.
std::vector<CheckpointSummary> estimate(const IncrementModel& model, std::size_t n, const CheckpointSchedule& sched,
                                        std::uint64_t replicates, std::uint64_t master_seed,
                                        ParallelOptions opts = {});

/// Checkpoint-major list of the five statistics.
std::vector<MonteCarloEstimate> flatten(const std::vector<CheckpointSummary>& rows);

enum class Functional { L, A, R };

struct SampleSet {
    std::size_t n = 0;
    std::vector<double> values;
};

/// Terminal value of one functional per replicate, in replicate order.
SampleSet collect_samples(const IncrementModel& model, std::size_t n, std::uint64_t replicates,
                          std::uint64_t master_seed, Functional functional, ParallelOptions opts = {});

/// Same replicates, several checkpoints at once: result[j] holds the values
/// at checkpoints[j].
std::vector<SampleSet> collect_samples_at(const IncrementModel& model, const std::vector<std::size_t>& checkpoints,
                                          std::uint64_t replicates, std::uint64_t master_seed, Functional functional,
                                          ParallelOptions opts = {});

struct CltResult {
    double D = 0.0;
    double threshold = 0.0;  // 1.36 / sqrt(m)
    bool pass = false;
    std::vector<double> standardized;  // (L - mean) / sqrt(4 sigma2_mu n)
};

/// KS distance between centred perimeters scaled by sqrt(4 sigma2_mu n) and
/// the standard normal. Throws ZeroDrift, DegenerateDrift (sigma2_mu = 0) or
/// InfiniteVariance.
CltResult clt_test(const IncrementModel& model, std::size_t n, std::uint64_t replicates, std::uint64_t master_seed,
                   ParallelOptions opts = {});

struct ExactMoments {
    double EL = 0.0;
    double VarL = 0.0;
    double EA = 0.0;
    double VarA = 0.0;
};

/// Exact moments by enumerating all support^n paths of a finite-support
/// model. Throws NotFiniteSupport or SupportTooLarge (support^n > 1e7).
ExactMoments enumerate_exact(const IncrementModel& model, std::size_t n);

struct MartingaleCheck {
    double lhs = 0.0;  // Var L_n
    double rhs = 0.0;  // sum_i E[D_{n,i}^2]
};

/// Both sides of the resampling martingale-difference identity by nested
/// exact enumeration: D_{n,i} = E[L_n - L_n^{(i)} | F_i], where L_n^{(i)}
/// resamples the i-th increment. Needs support^(n+1) <= 1e7.
MartingaleCheck martingale_decomposition_check(const IncrementModel& model, std::size_t n);

/// Exact E||S_k|| for k = 1..n of a finite-support model (by convolution).
std::vector<double> exact_norm_means(const IncrementModel& model, std::size_t n);

/// Exact E T(S_m, S_k - S_m) for 1 <= m < k of a finite-support model.
double exact_triangle_mean(const IncrementModel& model, std::size_t m, std::size_t k);

struct LogSlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<std::size_t> n;
    std::vector<double> var_L;
};

/// Least-squares fit of Var L_n = intercept + slope * log n over the given
/// checkpoints. Exploratory (the degenerate-drift experiment).
LogSlopeFit variance_log_slope(const IncrementModel& model, const std::vector<std::size_t>& checkpoints,
                               std::uint64_t replicates, std::uint64_t master_seed, ParallelOptions opts = {});

}  // namespace hullwalk
