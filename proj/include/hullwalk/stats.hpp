#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>

namespace hullwalk {

/// Running count, mean and central moments M2..M4 with an exact pairwise
/// merge (Pebay 2008). Merging in a fixed order gives bitwise reproducible
/// results however the samples were partitioned.
class MomentAccumulator {
public:
    void add(double x);
    void merge(const MomentAccumulator& other);

    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }
    /// Unbiased sample variance.
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double std_error_mean() const { return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }
    /// Standard error of variance() from the fourth central moment:
    /// Var(s^2) ~ (m4 - (n-3)/(n-1) s^4) / n.
    double std_error_variance() const;
    double central_moment4() const { return n_ > 0 ? m4_ / static_cast<double>(n_) : 0.0; }

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double m3_ = 0.0;
    double m4_ = 0.0;
};

double normal_cdf(double x);

/// Kolmogorov-Smirnov distance between the empirical distribution of
/// `samples` and a continuous cdf. Throws Error{TooFewSamples} below 2.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic 5% critical value 1.36 / sqrt(m).
inline double ks_threshold_5pct(std::size_t m) { return 1.36 / std::sqrt(static_cast<double>(m)); }

}  // namespace hullwalk
