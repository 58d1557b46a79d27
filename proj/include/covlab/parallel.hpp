#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace covlab {

inline int thread_count()
{
    if (const char* env = std::getenv("COVLAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

/// Runs fn(i) for i in [0, n) on worker threads. Each index owns its output
/// slot, so results are deterministic regardless of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn)
{
    int workers = thread_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

/// Deterministic pairwise summation for float reductions.
inline double pairwise_sum(std::vector<double> xs)
{
    if (xs.empty())
        return 0.0;
    while (xs.size() > 1) {
        std::vector<double> next((xs.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < xs.size(); i += 2)
            next[i / 2] = xs[i] + xs[i + 1];
        if (xs.size() % 2)
            next.back() = xs.back();
        xs = std::move(next);
    }
    return xs[0];
}

} // namespace covlab
