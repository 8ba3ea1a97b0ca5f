#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace penalfd {

inline unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs fn(k) for k in [0, count) over at most `jobs` threads in contiguous
// blocks. The first exception thrown by any worker is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        const std::size_t block = (count + jobs - 1) / jobs;
        for (unsigned w = 0; w < jobs; ++w) {
            const std::size_t lo = w * block;
            const std::size_t hi = std::min(count, lo + block);
            if (lo >= hi) break;
            workers.emplace_back([&, lo, hi] {
                try {
                    for (std::size_t k = lo; k < hi; ++k) fn(k);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

// Dynamic scheduling for heterogeneous tasks (sweep points).
template <class Fn>
void parallel_tasks(std::size_t count, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::exception_ptr failure;
    std::mutex m;
    std::size_t next = 0;
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (;;) {
                    std::size_t k;
                    {
                        std::lock_guard lock(m);
                        if (failure || next >= count) return;
                        k = next++;
                    }
                    try {
                        fn(k);
                    } catch (...) {
                        std::lock_guard lock(m);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace penalfd
