#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace hullwalk {

/// Philox4x32-10 block function (Salmon et al., SC'11). Stateless: the output
/// is a pure function of (counter, key).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter apply(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }
};

/// SplitMix64 finaliser; used to derive independent master seeds for
/// different purposes from one user seed.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag));
}

/// Counter-based random stream keyed by (master_seed, stream_index). The
/// n-th draw depends only on (master_seed, stream_index, n), so a replicate
/// produces the same numbers on any thread.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : master_seed_(master_seed), stream_index_(stream_index) {}

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }
    std::uint64_t blocks_used() const { return block_; }

    std::uint64_t next_u64() {
        if (buffered_ == 0) refill();
        return buffer_[--buffered_];
    }

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) by multiply-shift on 32 random bits.
    std::uint32_t below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(((next_u64() >> 32) * bound) >> 32);
    }

    /// Standard normal by the Box-Muller transform; values come in pairs.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    void refill() {
        const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                      static_cast<std::uint32_t>(stream_index_),
                                      static_cast<std::uint32_t>(stream_index_ >> 32)};
        const Philox4x32::Key key{static_cast<std::uint32_t>(master_seed_),
                                  static_cast<std::uint32_t>(master_seed_ >> 32)};
        const auto out = Philox4x32::apply(ctr, key);
        ++block_;
        buffer_[1] = (std::uint64_t{out[1]} << 32) | out[0];
        buffer_[0] = (std::uint64_t{out[3]} << 32) | out[2];
        buffered_ = 2;
    }

    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace hullwalk
