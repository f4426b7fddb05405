#pragma once
#include <atomic>
#include <cstdlib>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace uckl {

// Parallel width: UCKL_THREADS env var, else hardware concurrency.
// UCKL_THREADS=1 forces fully sequential execution.
inline int thread_count() {
    if (const char* env = std::getenv("UCKL_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Static block partition over [0, n). Each index is processed exactly once and
// writes only its own outputs, so results do not depend on the thread count.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    int nt = thread_count();
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    if (static_cast<std::size_t>(nt) > n) nt = static_cast<int>(n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::exception_ptr err = nullptr;
    std::atomic_flag errSet = ATOMIC_FLAG_INIT;
    std::size_t chunk = (n + nt - 1) / nt;
    for (int tix = 0; tix < nt; ++tix) {
        std::size_t lo = tix * chunk;
        std::size_t hi = lo + chunk < n ? lo + chunk : n;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f, &err, &errSet] {
            try {
                for (std::size_t i = lo; i < hi; ++i) f(i);
            } catch (...) {
                if (!errSet.test_and_set()) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace uckl
