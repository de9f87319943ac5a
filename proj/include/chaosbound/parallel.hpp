#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace chaosbound {

/// Worker count used by parallel loops; 0 means hardware concurrency.
void set_worker_count(unsigned n);
[[nodiscard]] unsigned worker_count();

/// Splits [0, count) into static contiguous ranges, one per worker, and
/// calls body(lo, hi) for each. The first exception thrown by any worker is
/// rethrown on the calling thread.
template <class Body>
void parallel_for_ranges(std::size_t count, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        if (count > 0) body(std::size_t{0}, count);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = count * w / workers;
        const std::size_t hi = count * (w + 1) / workers;
        pool.emplace_back([&, lo, hi, w] {
            try {
                body(lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/// Calls body(i) for i in [0, count). Callers write into per-index slots and
/// reduce afterwards in index order, so results do not depend on the worker count.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    parallel_for_ranges(count, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) body(i);
    });
}

}  // namespace chaosbound
