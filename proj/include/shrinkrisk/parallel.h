#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shrinkrisk {

/// Evaluates `task(i)` for i in [0, count) on up to `workers` threads and
/// returns the results in index order. Workers pull indices from a shared
/// counter; since each result lands in its own slot, the output does not
/// depend on scheduling. The first exception thrown by a task is rethrown.
template <typename Task>
auto run_indexed(std::size_t count, unsigned workers, Task&& task)
    -> std::vector<decltype(task(std::size_t{}))> {
    using Result = decltype(task(std::size_t{}));
    std::vector<Result> out(count);
    if (count == 0) return out;

    unsigned threads = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = task(i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                out[i] = task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return out;
}

/// Mean and standard error of a sample, accumulated in index order.
struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
};

inline MeanEstimate summarize(const std::vector<double>& values) {
    MeanEstimate est;
    est.count = values.size();
    if (values.empty()) return est;
    double sum = 0.0;
    for (double v : values) sum += v;
    est.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - est.mean) * (v - est.mean);
        const double var = ss / static_cast<double>(values.size() - 1);
        est.std_error = std::sqrt(var / static_cast<double>(values.size()));
    }
    return est;
}

}  // namespace shrinkrisk
