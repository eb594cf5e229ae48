#pragma once

#include <cstdlib>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace resonet {

// Worker-thread cap. RESONET_THREADS=n bounds it; unset or 0 means
// hardware concurrency. Always at least 1.
inline std::size_t thread_limit() {
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("RESONET_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return hw;
}

// Deterministic parallel map over [0, n): each index writes only its own
// output slot, so the result is independent of the thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    std::size_t workers = thread_limit();
    if (workers > n) workers = n;
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([=]() {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace resonet
