#include "freeclt/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace freeclt {

int thread_count() {
    if (const char* env = std::getenv("FREECLT_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed >= 1) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(thread_count()), std::max<std::size_t>(count, 1));
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::mutex mutex;
    std::exception_ptr first_error;
    auto run_chunk = [&](std::size_t lo, std::size_t hi) {
        try {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        } catch (...) {
            std::lock_guard lock(mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        if (lo >= count) break;
        pool.emplace_back(run_chunk, lo, std::min(lo + chunk, count));
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace freeclt
