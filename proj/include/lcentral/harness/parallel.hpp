#pragma once

/**
 * @file parallel.hpp
 * @brief Static work partitioning and order-fixed reductions.
 *
 * Grid index ranges are cut into contiguous blocks, one per worker; workers
 * write into disjoint preallocated slots. Reductions use a pairwise tree whose
 * shape depends only on the input length, so sums are bit-identical for any
 * worker count.
 */

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace lcentral::harness {

/// Environment variable that overrides the worker count.
inline constexpr const char* threads_env = "LCENTRAL_THREADS";

inline unsigned default_threads() {
    if (const char* env = std::getenv(threads_env)) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(i) for every i in [0, n), split statically over `threads` workers.
/// The first exception thrown by any worker is rethrown on the caller.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t begin = n * w / threads;
            const std::size_t end = n * (w + 1) / threads;
            workers.emplace_back([&, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i) fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

/// Pairwise (balanced binary tree) sum; the split point is always n/2.
template <typename T>
T tree_sum(std::span<const T> xs) {
    if (xs.empty()) return T{};
    if (xs.size() == 1) return xs[0];
    if (xs.size() <= 8) {
        T acc = xs[0];
        for (std::size_t i = 1; i < xs.size(); ++i) acc += xs[i];
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return tree_sum(xs.first(half)) + tree_sum(xs.subspan(half));
}

template <typename T>
T tree_sum(const std::vector<T>& xs) {
    return tree_sum(std::span<const T>(xs));
}

}  // namespace lcentral::harness
