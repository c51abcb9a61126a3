#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace regracut {

/// Worker count: REGRACUT_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int thread_count();

/// Calls fn(i) for every i in [0, count), split into contiguous chunks over
/// up to thread_count() threads. fn must only write to per-index state.
template <typename Fn>
void parallel_for(std::size_t count, Fn && fn)
{
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk, end = std::min(count, begin + chunk);
        if (begin >= end)
            break;
        threads.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i)
                fn(i);
        });
    }
}

} // namespace regracut
