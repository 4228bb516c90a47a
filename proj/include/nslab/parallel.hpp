#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace nslab {

/// Process-wide worker count used by parallel_for (set once from the CLI).
int hardware_threads();
void set_thread_count(int n);

/// Runs fn(i) for i in [0, count). Each index writes only its own outputs,
/// so results are identical for any thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace nslab
