#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace spinpoly {

// Worker count: hardware concurrency, capped by the SPINPOLY_THREADS
// environment variable when set.
inline int thread_budget() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("SPINPOLY_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
}

// Runs fn(i) for i in [0, n). Each index writes only its own output slot, so
// results are identical to the sequential order regardless of scheduling.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(thread_budget(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([w, n, workers, &fn] {
            for (int i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace spinpoly
