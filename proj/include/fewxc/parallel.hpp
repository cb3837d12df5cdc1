#pragma once

// Thread budget plumbing. FEWXC_THREADS caps the fan-out of internal
// searches; the default is the hardware concurrency. Merges are always
// order-insensitive or take the lexicographically first hit, so results do
// not depend on the budget.

#include <algorithm>
#include <cstdlib>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fewxc {

inline std::size_t thread_budget() {
    if (const char* env = std::getenv("FEWXC_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs worker(begin, end) over chunks of [0, total) and returns the smallest
// engaged result, where worker returns the smallest hit inside its chunk.
template <typename T, typename Worker>
std::optional<T> first_hit_parallel(std::size_t total, Worker worker) {
    const std::size_t budget = std::min(thread_budget(), std::size_t{8});
    if (budget <= 1 || total < 256) return worker(0, total);
    const std::size_t chunk = (total + budget - 1) / budget;
    std::vector<std::future<std::optional<T>>> futs;
    for (std::size_t lo = 0; lo < total; lo += chunk) {
        const std::size_t hi = std::min(total, lo + chunk);
        futs.push_back(std::async(std::launch::async,
                                  [worker, lo, hi]() { return worker(lo, hi); }));
    }
    std::optional<T> best;
    for (auto& f : futs) {
        auto r = f.get();
        if (r && (!best || *r < *best)) best = r;
    }
    return best;
}

} // namespace fewxc
