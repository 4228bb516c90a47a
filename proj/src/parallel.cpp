#include "nslab/parallel.hpp"

#include <algorithm>
#include <atomic>

namespace nslab {

namespace {
int g_threads = 0;  // 0 = use hardware_concurrency
}

int hardware_threads() {
    if (g_threads > 0) return g_threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void set_thread_count(int n) { g_threads = n; }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const int nthreads = std::min<std::size_t>(hardware_threads(), count);
    if (nthreads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int w = 0; w < nthreads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace nslab
