#pragma once

// Counter-based randomness: every draw is a pure function of (seed, key...).
// Grid points never share generator state, so sampled grids do not depend on
// the worker count or the order in which points are visited.

#include <cstdint>
#include <initializer_list>

namespace lcentral::harness {

inline constexpr std::uint64_t default_seed = 0x5eed'2024'0001ULL;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class KeyedRng {
public:
    KeyedRng(std::uint64_t seed, std::initializer_list<std::uint64_t> key) : state_(splitmix64(seed)) {
        for (auto k : key) state_ = splitmix64(state_ ^ splitmix64(k));
    }

    std::uint64_t next() { return splitmix64(state_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Uniform integer in [lo, hi], by rejection.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

private:
    std::uint64_t state_;
    std::uint64_t counter_ = 0;
};

}  // namespace lcentral::harness
