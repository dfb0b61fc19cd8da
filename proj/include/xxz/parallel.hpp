// parallel.hpp - deterministic worker pools: tasks are indexed, every task
// derives its own RNG stream from (seed, index), and results are merged in
// index order, so output is identical for any worker count.
#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace xxz {

template <typename Fn>
void parallel_for_index(std::size_t count, int workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int nw = static_cast<int>(std::min<std::size_t>(workers, count));
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += nw) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

// Chunked reduction; partials are combined in chunk order.
template <typename T, typename Leaf, typename Combine>
T parallel_reduce_index(std::size_t count, int workers, T init, Leaf&& leaf,
                        Combine&& combine) {
    if (workers <= 1 || count <= 1) {
        T acc = init;
        for (std::size_t i = 0; i < count; ++i) acc = combine(acc, leaf(i));
        return acc;
    }
    const int nw = static_cast<int>(std::min<std::size_t>(workers, count));
    std::vector<T> partial(nw, init);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    const std::size_t chunk = (count + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(count, lo + chunk);
            T acc = init;
            for (std::size_t i = lo; i < hi; ++i) acc = combine(acc, leaf(i));
            partial[w] = acc;
        });
    }
    for (auto& t : pool) t.join();
    T acc = init;
    for (const T& p : partial) acc = combine(acc, p);
    return acc;
}

}  // namespace xxz
