#pragma once

// Scale-axis parallelism helper. Work items write to disjoint storage and
// any cross-row reduction happens afterwards in a fixed order, so results
// are identical for every thread count (SPECWAVE_THREADS, 0 = auto).

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace specwave {

inline unsigned thread_count()
{
    unsigned n = 0;
    if (const char* env = std::getenv("SPECWAVE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 0)
            n = static_cast<unsigned>(v);
    }
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0)
            n = 1;
    }
    return std::min(n, 64u);
}

/// Run fn(i) for i in [0, count). fn must only touch state owned by row i.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn)
{
    const unsigned nthreads = std::min<std::size_t>(thread_count(), count);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&fn, t, nthreads, count] {
            for (std::size_t i = t; i < count; i += nthreads)
                fn(i);
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace specwave
