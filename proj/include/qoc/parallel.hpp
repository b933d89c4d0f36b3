#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qoc {

inline int hardware_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// Runs fn(r) for every replicate r in [0, count). Work is handed out in
// fixed blocks and each replicate writes only its own output slot, so
// results are identical for any thread count.
template <class Fn>
void parallel_replicates(std::int64_t count, int threads, Fn&& fn) {
    if (count <= 0) return;
    if (threads <= 0) threads = hardware_threads();
    constexpr std::int64_t kBlock = 256;
    if (threads == 1 || count <= kBlock) {
        for (std::int64_t r = 0; r < count; ++r) fn(r);
        return;
    }
    std::atomic<std::int64_t> next_block{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::int64_t begin = next_block.fetch_add(1) * kBlock;
            if (begin >= count) return;
            const std::int64_t end = std::min(begin + kBlock, count);
            try {
                for (std::int64_t r = begin; r < end; ++r) fn(r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace qoc
