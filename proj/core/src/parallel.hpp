#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace citelink::detail {

// Runs fn(i) for i in [0, n) over contiguous chunks. fn must only write to
// slot i of its output.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn &&fn) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([begin, end, &fn] {
            for (std::size_t i = begin; i < end; ++i)
                fn(i);
        });
    }
}

} // namespace citelink::detail
