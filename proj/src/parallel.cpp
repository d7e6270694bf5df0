#include "blochflow/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace blochflow {

int hardware_workers() {
    const unsigned n = std::thread::hardware_concurrency();
    return n > 0 ? static_cast<int>(n) : 1;
}

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& body) {
    if (count == 0)
        return;
    std::size_t w = workers > 0 ? static_cast<std::size_t>(workers)
                                : static_cast<std::size_t>(hardware_workers());
    w = std::min(w, count);
    if (w <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (std::size_t k = 0; k < w; ++k) {
        const std::size_t lo = count * k / w;
        const std::size_t hi = count * (k + 1) / w;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i)
                    body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

}  // namespace blochflow
