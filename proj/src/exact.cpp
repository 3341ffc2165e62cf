#include "hullwalk/error.hpp"
#include "hullwalk/montecarlo.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace hullwalk {

namespace {

constexpr double kMaxPaths = 1e7;

std::vector<Atom> support_or_throw(const IncrementModel& model) {
    auto atoms = finite_support(model);
    if (atoms.empty()) throw Error(ErrorCode::NotFiniteSupport, "model has no finite support to enumerate");
    return atoms;
}

std::size_t checked_power(std::size_t base, std::size_t exp) {
    if (std::pow(static_cast<double>(base), static_cast<double>(exp)) > kMaxPaths) {
        throw Error(ErrorCode::SupportTooLarge, "enumeration would exceed 1e7 paths");
    }
    std::size_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) out *= base;
    return out;
}

/// Visits every increment sequence in lexicographic order (the first step is
/// the most significant digit) as (index, positions S_0..S_n, probability).
template <class Visit>
void for_each_path(const std::vector<Atom>& atoms, std::size_t n, Visit&& visit) {
    const std::size_t s = atoms.size();
    const std::size_t total = checked_power(s, n);
    std::vector<std::size_t> digit(n, 0);
    std::vector<Vec2> pos(n + 1);
    std::vector<double> prob(n + 1, 1.0);
    std::size_t first_dirty = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        for (std::size_t k = first_dirty; k < n; ++k) {
            pos[k + 1] = pos[k] + atoms[digit[k]].point;
            prob[k + 1] = prob[k] * atoms[digit[k]].prob;
        }
        visit(idx, std::span<const Vec2>(pos), prob[n]);
        // advance the odometer from the last step
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++digit[k] < s) break;
            digit[k] = 0;
        }
        first_dirty = k;
    }
}

struct WeightedMoments {
    double weight = 0.0;
    double mean = 0.0;
    double s = 0.0;

    void add(double x, double w) {
        weight += w;
        const double d = x - mean;
        mean += (w / weight) * d;
        s += w * d * (x - mean);
    }
    double variance() const { return weight > 0.0 ? s / weight : 0.0; }
};

using Distribution = std::map<std::pair<double, double>, double>;

Distribution position_distribution(const std::vector<Atom>& atoms, std::size_t k) {
    Distribution dist{{{0.0, 0.0}, 1.0}};
    for (std::size_t step = 0; step < k; ++step) {
        Distribution next;
        for (const auto& [p, w] : dist) {
            for (const Atom& a : atoms) next[{p.first + a.point.x, p.second + a.point.y}] += w * a.prob;
        }
        dist = std::move(next);
    }
    return dist;
}

}  // namespace

ExactMoments enumerate_exact(const IncrementModel& model, std::size_t n) {
    const auto atoms = support_or_throw(model);
    ExactMoments out;
    if (n == 0) return out;
    WeightedMoments L;
    WeightedMoments A;
    for_each_path(atoms, n, [&](std::size_t, std::span<const Vec2> pos, double p) {
        const ConvexPolygon hull = convex_hull(pos);
        L.add(perimeter(hull), p);
        A.add(area(hull), p);
    });
    out.EL = L.mean;
    out.VarL = L.variance();
    out.EA = A.mean;
    out.VarA = A.variance();
    return out;
}

MartingaleCheck martingale_decomposition_check(const IncrementModel& model, std::size_t n) {
    const auto atoms = support_or_throw(model);
    const std::size_t s = atoms.size();
    checked_power(s, n + 1);
    if (n == 0) return {};

    const std::size_t total = checked_power(s, n);
    std::vector<double> L(total);
    std::vector<double> weight(total);
    WeightedMoments lhs;
    for_each_path(atoms, n, [&](std::size_t idx, std::span<const Vec2> pos, double p) {
        L[idx] = perimeter(convex_hull(pos));
        weight[idx] = p;
        lhs.add(L[idx], p);
    });

    // Probability of a digit string, digits taken from an index of given length.
    auto seq_prob = [&](std::size_t index, std::size_t len) {
        double p = 1.0;
        for (std::size_t k = 0; k < len; ++k) {
            p *= atoms[index % s].prob;
            index /= s;
        }
        return p;
    };

    double rhs = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t prefixes = checked_power(s, i);
        const std::size_t futures = checked_power(s, n - i);
        for (std::size_t prefix = 0; prefix < prefixes; ++prefix) {
            const std::size_t parent = prefix / s;
            double d = 0.0;
            for (std::size_t alt = 0; alt < s; ++alt) {
                const std::size_t alt_prefix = parent * s + alt;
                for (std::size_t fut = 0; fut < futures; ++fut) {
                    const double w = atoms[alt].prob * seq_prob(fut, n - i);
                    d += w * (L[prefix * futures + fut] - L[alt_prefix * futures + fut]);
                }
            }
            rhs += seq_prob(prefix, i) * d * d;
        }
    }
    return {lhs.variance(), rhs};
}

std::vector<double> exact_norm_means(const IncrementModel& model, std::size_t n) {
    const auto atoms = support_or_throw(model);
    std::vector<double> out;
    Distribution dist{{{0.0, 0.0}, 1.0}};
    for (std::size_t k = 1; k <= n; ++k) {
        Distribution next;
        for (const auto& [p, w] : dist) {
            for (const Atom& a : atoms) next[{p.first + a.point.x, p.second + a.point.y}] += w * a.prob;
        }
        dist = std::move(next);
        double mean = 0.0;
        for (const auto& [p, w] : dist) mean += w * std::hypot(p.first, p.second);
        out.push_back(mean);
    }
    return out;
}

double exact_triangle_mean(const IncrementModel& model, std::size_t m, std::size_t k) {
    if (m < 1 || m >= k) throw Error(ErrorCode::InvalidArgument, "need 1 <= m < k");
    const auto atoms = support_or_throw(model);
    // S_m and S_k - S_m are independent copies of S_m and S_{k-m}.
    const Distribution first = position_distribution(atoms, m);
    const Distribution second = position_distribution(atoms, k - m);
    double mean = 0.0;
    for (const auto& [u, wu] : first) {
        for (const auto& [v, wv] : second) {
            mean += wu * wv * triangle_area({u.first, u.second}, {v.first, v.second});
        }
    }
    return mean;
}

}  // namespace hullwalk
