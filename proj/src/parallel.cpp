#include "spintomo/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace spintomo {

int worker_thread_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("QPU_TOMO_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

void parallel_for(long n, const std::function<void(long, long)>& chunk_fn) {
    int workers = worker_thread_count();
    if (workers <= 1 || n < 64) {
        chunk_fn(0, n);
        return;
    }
    workers = static_cast<int>(std::min<long>(workers, n));
    std::vector<std::thread> threads;
    long per = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        long lo = w * per;
        long hi = std::min(n, lo + per);
        if (lo >= hi) break;
        threads.emplace_back([&chunk_fn, lo, hi] { chunk_fn(lo, hi); });
    }
    for (auto& t : threads) t.join();
}

} // namespace spintomo
