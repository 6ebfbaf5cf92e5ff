#include "pcp/parallel.hpp"

#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace pcp {

namespace {

std::atomic<int> g_max_workers{0};  // 0 = use hardware default

int hardware_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace

void set_max_workers(int n) { g_max_workers.store(n > 0 ? n : 0); }

int max_workers() {
    int n = g_max_workers.load();
    return n > 0 ? n : hardware_workers();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(max_workers()), n);
    if (workers <= 1 || n < 2048) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::mutex err_mutex;
    std::size_t err_index = std::numeric_limits<std::size_t>::max();
    std::exception_ptr err;

    auto run_chunk = [&](std::size_t begin, std::size_t end) {
        try {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (begin < err_index) {
                err_index = begin;
                err = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        if (begin >= n) break;
        pool.emplace_back(run_chunk, begin, std::min(n, begin + chunk));
    }
    run_chunk(0, std::min(n, chunk));
    for (auto& t : pool) t.join();

    if (err) std::rethrow_exception(err);
}

namespace {

double pairwise_sum_impl(const double* xs, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += xs[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_impl(xs, half) + pairwise_sum_impl(xs + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
    return pairwise_sum_impl(xs.data(), xs.size());
}

}  // namespace pcp
