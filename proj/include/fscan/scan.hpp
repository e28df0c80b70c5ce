#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "fscan/category.hpp"
#include "fscan/error.hpp"

namespace fscan {

namespace detail {

inline unsigned default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(job) for job in [0, jobs) on up to `workers` threads, blocked
// assignment. The first exception thrown by any job is rethrown here.
template <class Fn>
void parallel_for(std::size_t jobs, unsigned workers, Fn&& fn) {
    if (jobs == 0) return;
    const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), jobs);
    if (threads == 1) {
        for (std::size_t j = 0; j < jobs; ++j) fn(j);
        return;
    }
    std::mutex mu;
    std::exception_ptr first_error;
    auto run_block = [&](std::size_t t) {
        const std::size_t lo = t * jobs / threads;
        const std::size_t hi = (t + 1) * jobs / threads;
        try {
            for (std::size_t j = lo; j < hi; ++j) fn(j);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!first_error) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(run_block, t);
    run_block(0);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Chunk partition for the parallel scan. Depends on n only, never on the
// worker count, so results are bitwise identical for any --workers value.
inline std::size_t scan_chunk_count(std::size_t n) {
    const std::size_t chunks = (n + 3) / 4;
    return std::min<std::size_t>(chunks == 0 ? 1 : chunks, 1024);
}

template <Category C>
void require_valid(const IntervalAssignment<C>& asg, const C& cat) {
    const auto bad = validate_assignment(asg, cat);
    if (!bad.empty()) throw EndpointMismatch(bad.front());
}

}  // namespace detail

// prefixes[k] = F([lo, lo+k]); prefixes[0] is the identity at the start
// object.
template <Category C>
struct ScanResult {
    std::vector<typename C::Morphism> prefixes;
};

// levels[0] = elementary cells; levels[i+1] combines neighbouring pairs of
// levels[i]. When a level has odd length the unpaired block is carried up
// unchanged (identity padding at the final object, stripped from results).
template <Category C>
struct SweepTree {
    std::vector<std::vector<typename C::Morphism>> levels;

    const typename C::Morphism& root() const { return levels.back().front(); }
};

template <Category C>
ScanResult<C> scan_serial(const IntervalAssignment<C>& asg, const C& cat) {
    detail::require_valid(asg, cat);
    ScanResult<C> out;
    out.prefixes.reserve(asg.cells.size() + 1);
    out.prefixes.push_back(cat.identity(asg.objects.front()));
    for (std::size_t k = 0; k < asg.cells.size(); ++k)
        out.prefixes.push_back(k == 0 ? asg.cells[0] : cat.compose(out.prefixes[k], asg.cells[k]));
    return out;
}

template <Category C>
SweepTree<C> up_sweep(const IntervalAssignment<C>& asg, const C& cat,
                      unsigned workers = detail::default_workers()) {
    detail::require_valid(asg, cat);
    SweepTree<C> tree;
    tree.levels.push_back(asg.cells);
    while (tree.levels.back().size() > 1) {
        const auto& prev = tree.levels.back();
        std::vector<typename C::Morphism> next((prev.size() + 1) / 2);
        detail::parallel_for(next.size(), workers, [&](std::size_t k) {
            next[k] = 2 * k + 1 < prev.size() ? cat.compose(prev[2 * k], prev[2 * k + 1])
                                              : prev[2 * k];
        });
        tree.levels.push_back(std::move(next));
    }
    return tree;
}

namespace detail {

// Exclusive prefix of `agg` under compose: excl[c] = agg[0] . ... . agg[c-1],
// excl[0] = id0. Combine tree has logarithmic depth.
template <Category C>
std::vector<typename C::Morphism> exclusive_tree_scan(const std::vector<typename C::Morphism>& agg,
                                                      const typename C::Morphism& id0,
                                                      const C& cat) {
    using M = typename C::Morphism;
    const std::size_t p = agg.size();
    std::vector<std::vector<M>> levels{agg};
    while (levels.back().size() > 1) {
        const auto& prev = levels.back();
        std::vector<M> next((prev.size() + 1) / 2);
        for (std::size_t k = 0; k < next.size(); ++k)
            next[k] = 2 * k + 1 < prev.size() ? cat.compose(prev[2 * k], prev[2 * k + 1])
                                              : prev[2 * k];
        levels.push_back(std::move(next));
    }
    std::vector<M> excl(p, id0);
    // Walk down: carry at (level, k) aggregates every chunk left of k 2^level.
    auto down = [&](auto&& self, std::size_t level, std::size_t k, const M& carry) -> void {
        if (level == 0) {
            excl[k] = carry;
            return;
        }
        const auto& kids = levels[level - 1];
        self(self, level - 1, 2 * k, carry);
        if (2 * k + 1 < kids.size())
            self(self, level - 1, 2 * k + 1, cat.compose(carry, kids[2 * k]));
    };
    down(down, levels.size() - 1, 0, id0);
    return excl;
}

}  // namespace detail

// Same contents as scan_serial, computed as: per-chunk serial folds, a
// log-depth exclusive combine of the chunk aggregates, then per-chunk
// prefix passes seeded by the exclusive values. Any n is supported; no
// identity padding is introduced at interior objects.
template <Category C>
ScanResult<C> scan_parallel(const IntervalAssignment<C>& asg, const C& cat,
                            unsigned workers = detail::default_workers()) {
    using M = typename C::Morphism;
    detail::require_valid(asg, cat);
    const std::size_t n = asg.cells.size();
    ScanResult<C> out;
    if (n == 0) {
        out.prefixes.push_back(cat.identity(asg.objects.front()));
        return out;
    }
    const std::size_t chunks = detail::scan_chunk_count(n);
    const auto chunk_lo = [&](std::size_t c) { return c * n / chunks; };

    std::vector<M> agg(chunks, cat.identity(asg.objects.front()));
    detail::parallel_for(chunks, workers, [&](std::size_t c) {
        const std::size_t lo = chunk_lo(c), hi = chunk_lo(c + 1);
        M acc = asg.cells[lo];
        for (std::size_t k = lo + 1; k < hi; ++k) acc = cat.compose(acc, asg.cells[k]);
        agg[c] = std::move(acc);
    });

    const std::vector<M> excl =
        detail::exclusive_tree_scan(agg, cat.identity(asg.objects.front()), cat);

    out.prefixes.assign(n + 1, cat.identity(asg.objects.front()));
    detail::parallel_for(chunks, workers, [&](std::size_t c) {
        const std::size_t lo = chunk_lo(c), hi = chunk_lo(c + 1);
        M acc = excl[c];
        for (std::size_t k = lo; k < hi; ++k) {
            acc = (c == 0 && k == lo) ? asg.cells[k] : cat.compose(acc, asg.cells[k]);
            out.prefixes[k + 1] = acc;
        }
    });
    return out;
}

}  // namespace fscan
