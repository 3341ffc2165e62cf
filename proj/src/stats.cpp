#include "hullwalk/stats.hpp"

#include "hullwalk/error.hpp"

#include <algorithm>
#include <vector>

namespace hullwalk {

void MomentAccumulator::add(double x) {
    MomentAccumulator one;
    one.n_ = 1;
    one.mean_ = x;
    merge(one);
}

void MomentAccumulator::merge(const MomentAccumulator& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
        *this = o;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(o.n_);
    const double n = na + nb;
    const double d = o.mean_ - mean_;
    const double d2 = d * d;

    const double m2 = m2_ + o.m2_ + d2 * na * nb / n;
    const double m3 = m3_ + o.m3_ + d2 * d * na * nb * (na - nb) / (n * n) + 3.0 * d * (na * o.m2_ - nb * m2_) / n;
    const double m4 = m4_ + o.m4_ + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                      6.0 * d2 * (na * na * o.m2_ + nb * nb * m2_) / (n * n) + 4.0 * d * (na * o.m3_ - nb * m3_) / n;

    mean_ += d * nb / n;
    m2_ = m2;
    m3_ = m3;
    m4_ = m4;
    n_ += o.n_;
}

double MomentAccumulator::std_error_variance() const {
    if (n_ < 2) return 0.0;
    const double n = static_cast<double>(n_);
    const double s2 = variance();
    const double v = (central_moment4() - (n - 3.0) / (n - 1.0) * s2 * s2) / n;
    return std::sqrt(std::max(v, 0.0));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.size() < 2) throw Error(ErrorCode::TooFewSamples, "KS statistic needs at least 2 samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double m = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
    }
    return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw Error(ErrorCode::TooFewSamples, "KS statistic needs at least 2 samples");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / x.size() - static_cast<double>(j) / y.size()));
    }
    return d;
}

}  // namespace hullwalk
