#ifndef TEXWEAVE_PARALLEL_HPP
#define TEXWEAVE_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace texweave {
namespace detail {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Each index is
/// processed exactly once; callers give every index its own output slot, so
/// results do not depend on the scheduling order.
template <typename Fn>
void parallel_for(int count, int jobs, Fn&& fn)
{
    if (count <= 0) return;
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs) - 1);
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

} // namespace detail
} // namespace texweave

#endif
