#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace latpol {

inline int effective_workers(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Run fn(i) for i in [0, n), distributing indices over the given number of
// threads through a shared counter. The first exception (by index) is
// rethrown after all threads have joined.
inline void run_indexed(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    workers = effective_workers(workers);
    if (n == 0) return;
    if (workers == 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::pair<std::size_t, std::exception_ptr>> errors(static_cast<std::size_t>(workers),
                                                                   {n, nullptr});
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    auto& slot = errors[static_cast<std::size_t>(w)];
                    if (i < slot.first) slot = {i, std::current_exception()};
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    std::pair<std::size_t, std::exception_ptr> first{n, nullptr};
    for (auto& e : errors)
        if (e.second && e.first < first.first) first = e;
    if (first.second) std::rethrow_exception(first.second);
}

} // namespace latpol
