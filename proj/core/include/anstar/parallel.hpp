#ifndef ANSTAR_PARALLEL_HPP
#define ANSTAR_PARALLEL_HPP

// Minimal chunked parallel-for. All library operations are pure functions
// over immutable inputs, so worker threads never share mutable state;
// callers keep determinism by writing to disjoint output slots and doing
// any final reduction in index order on the calling thread.

#include <cstddef>
#include <thread>
#include <vector>
#include <functional>

namespace anstar {

template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, Fn&& body,
                  unsigned max_threads = 0) {
    if (end <= begin) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (max_threads != 0 && max_threads < hw) hw = max_threads;
    const std::size_t count = end - begin;
    if (hw <= 1 || count < 2) {
        for (std::size_t i = begin; i < end; ++i) body(i);
        return;
    }
    const std::size_t nchunk = std::min<std::size_t>(hw, count);
    std::vector<std::thread> pool;
    pool.reserve(nchunk);
    const std::size_t step = (count + nchunk - 1) / nchunk;
    for (std::size_t c = 0; c < nchunk; ++c) {
        const std::size_t lo = begin + c * step;
        const std::size_t hi = std::min(end, lo + step);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace anstar

#endif  // ANSTAR_PARALLEL_HPP
