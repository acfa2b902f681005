#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace rsmax {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Callers keep
// determinism by writing results into per-index slots.
template <typename Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> threads;
    const int nthreads = std::min(jobs, count);
    threads.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
}

}  // namespace rsmax
