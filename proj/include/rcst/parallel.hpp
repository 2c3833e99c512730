#ifndef RCST_PARALLEL_HPP
#define RCST_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace rcst {

inline int hardware_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// 0 means "use the hardware default"
inline int resolve_threads(int requested) {
    if (requested < 0) requested = 0;
    return requested == 0 ? hardware_threads() : requested;
}

// Deterministic data-parallel reduction over the index range [0, n).
// The range is cut into one contiguous block per worker; block results are
// combined in block order on the calling thread. combine must be associative
// over adjacent blocks, which makes the result independent of the number of
// threads. Exceptions from workers are rethrown, earliest block first.
template <class T, class MapBlock, class Combine>
T parallel_reduce(std::size_t n, int threads, T identity, MapBlock map_block, Combine combine) {
    threads = resolve_threads(threads);
    if (n == 0) return identity;
    std::size_t workers = static_cast<std::size_t>(threads);
    if (workers > n) workers = n;
    if (workers == 1) {
        T block = map_block(static_cast<std::size_t>(0), n);
        return combine(std::move(identity), std::move(block));
    }
    std::vector<T> results(workers, identity);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = n / workers, extra = n % workers, lo = 0;
    for (std::size_t i = 0; i < workers; ++i) {
        std::size_t hi = lo + chunk + (i < extra ? 1 : 0);
        pool.emplace_back([&, i, lo, hi] {
            try {
                results[i] = map_block(lo, hi);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
        lo = hi;
    }
    for (std::thread& th : pool) th.join();
    for (std::size_t i = 0; i < workers; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
    T acc = std::move(identity);
    for (std::size_t i = 0; i < workers; ++i) acc = combine(std::move(acc), std::move(results[i]));
    return acc;
}

} // namespace rcst

#endif
