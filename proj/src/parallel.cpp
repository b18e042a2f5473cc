#include "hallmhd/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace hallmhd {

namespace {
std::atomic<int> g_thread_budget{1};
thread_local bool g_in_parallel = false;  // nested regions run serially
}

void set_thread_budget(int n) {
    g_thread_budget.store(std::max(1, n));
}

int thread_budget() {
    return g_thread_budget.load();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int budget = thread_budget();
    if (budget <= 1 || n < 2 || g_in_parallel) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t n_workers = std::min<std::size_t>(budget, n);
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    // Contiguous chunks: worker w covers [w*chunk, min((w+1)*chunk, n)).
    const std::size_t chunk = (n + n_workers - 1) / n_workers;
    for (std::size_t w = 0; w < n_workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn] {
            g_in_parallel = true;
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace hallmhd
