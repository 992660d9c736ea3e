#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vex {

namespace detail {
inline std::atomic<unsigned>& threadCap() {
    static std::atomic<unsigned> cap{0};
    return cap;
}
}  // namespace detail

/// Caps internal parallelism; 0 means hardware concurrency.
inline void setThreadCount(unsigned n) { detail::threadCap().store(n); }

inline unsigned threadCount() {
    const unsigned cap = detail::threadCap().load();
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return cap == 0 ? hw : std::min(cap, hw);
}

/// Runs body(i) for i in [0, n). Each index is written by exactly one thread,
/// so results do not depend on the thread count.
template <class Body>
void parallelFor(std::size_t n, Body&& body) {
    const unsigned workers = std::min<std::size_t>(threadCount(), n / 64 + 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex errorMutex;
    constexpr std::size_t chunk = 64;
    auto run = [&] {
        try {
            for (std::size_t start; (start = next.fetch_add(chunk)) < n;) {
                const std::size_t stop = std::min(n, start + chunk);
                for (std::size_t i = start; i < stop; ++i) body(i);
            }
        } catch (...) {
            std::lock_guard lock(errorMutex);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace vex
