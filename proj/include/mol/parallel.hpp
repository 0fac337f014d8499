#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace mol {

/// Worker count from an explicit request, the MOL_JOBS environment
/// variable, or the hardware concurrency, in that order.
inline unsigned resolve_jobs(unsigned requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MOL_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Run fn(i) for i in [0, count) on `jobs` workers.  fn must only touch
/// state owned by index i.
template <typename Fn>
void parallel_for(int count, unsigned jobs, Fn&& fn) {
    jobs = resolve_jobs(jobs);
    if (jobs <= 1 || count < 2) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(count));
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace mol
