#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace minami {

/// Worker count: hardware concurrency, capped by the MINAMI_LAB_THREADS
/// environment variable when set.
int worker_count();

/// Runs body(i) for i in [0, count). Work items must write to disjoint
/// storage; iteration-to-thread assignment is unspecified, so any result that
/// must be deterministic has to be reduced from an index-ordered buffer
/// afterwards.
template <class F>
void parallel_for(std::int64_t count, F&& body) {
    const int workers = worker_count();
    if (workers <= 1 || count < 4) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::int64_t> cursor{0};
    auto run = [&] {
        for (;;) {
            const std::int64_t i = cursor.fetch_add(1);
            if (i >= count) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = static_cast<int>(std::min<std::int64_t>(workers, count));
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
}

/// Pairwise sum over values[first, last): reduction tree is a pure function
/// of the index range, so totals do not depend on thread count.
double pairwise_sum(const double* values, std::size_t count);

}  // namespace minami
