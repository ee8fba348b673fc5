#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace dmp {

/// Internal thread budget. Results never depend on the value.
struct Parallelism {
    int threads = 1;

    [[nodiscard]] int effective() const noexcept
    {
        if (threads > 0)
            return threads;
        auto hw = static_cast<int>(std::thread::hardware_concurrency());
        return hw > 0 ? hw : 1;
    }
};

/// Calls fn(begin, end) over contiguous, disjoint chunks of [0, count).
template <typename Fn>
void parallel_for(int count, Parallelism par, Fn&& fn)
{
    const int workers = std::min(par.effective(), count);
    if (workers <= 1) {
        if (count > 0)
            fn(0, count);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int chunk = (count + workers - 1) / workers;
    for (int begin = 0; begin < count; begin += chunk) {
        const int end = std::min(count, begin + chunk);
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
}

/// Runs fn(i) for every i in [0, count). If any call throws, the exception
/// from the lowest index is rethrown after all workers finish.
template <typename Fn>
void parallel_tasks(int count, Parallelism par, Fn&& fn)
{
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(std::max(count, 0)));
    parallel_for(count, par, [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    });
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace dmp
