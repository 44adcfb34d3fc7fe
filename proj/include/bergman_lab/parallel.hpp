#pragma once
//
// Bounded worker pool for independent index jobs. Results are written by
// index, so the outcome does not depend on scheduling.
//

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bergman_lab {

inline std::atomic<int>& default_jobs_slot()
{
    static std::atomic<int> jobs{1};
    return jobs;
}

inline int default_jobs() { return default_jobs_slot().load(); }

inline void set_default_jobs(int jobs)
{
    if (jobs <= 0)
        jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    default_jobs_slot().store(jobs);
}

/// Calls fn(i) for i in [0, n) on at most `jobs` threads; the first
/// exception is rethrown after all workers stop.
template <class F>
void parallel_for(int n, F&& fn, int jobs = 0)
{
    if (jobs <= 0)
        jobs = default_jobs();
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(n);
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace bergman_lab
