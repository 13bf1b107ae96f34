#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace listlab {

inline uint32_t default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Run fn(task_index) for task_index in [0, tasks). Tasks are pulled from an
// atomic counter; callers keep results in per-task slots and merge them in
// task order, so aggregate output does not depend on the worker count.
inline void parallel_for(uint64_t tasks, uint32_t workers,
                         const std::function<void(uint64_t)>& fn) {
    if (workers == 0) workers = default_workers();
    if (workers <= 1 || tasks <= 1) {
        for (uint64_t t = 0; t < tasks; ++t) fn(t);
        return;
    }
    std::atomic<uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            uint64_t t = next.fetch_add(1);
            if (t >= tasks) return;
            fn(t);
        }
    };
    std::vector<std::thread> pool;
    uint32_t spawn = uint32_t(std::min<uint64_t>(workers, tasks));
    pool.reserve(spawn);
    for (uint32_t i = 0; i < spawn; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace listlab
