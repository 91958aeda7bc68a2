#include "manifold_align/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace manifold_align {

std::size_t worker_count() {
    std::size_t requested = 0;
    if (const char* env = std::getenv("MANIFOLD_ALIGN_THREADS")) {
        std::from_chars(env, env + std::strlen(env), requested);
    }
    if (requested == 0) requested = std::max(1U, std::thread::hardware_concurrency());
    return requested;
}

void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body) {
    if (end <= begin) return;
    const std::size_t total = end - begin;
    const std::size_t workers = std::min(worker_count(), total);
    if (workers <= 1 || total < 64) {
        for (std::size_t i = begin; i < end; ++i) body(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::size_t chunk = (total + workers - 1) / workers;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = begin + w * chunk;
        const std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace manifold_align
