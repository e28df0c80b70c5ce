#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <random>
#include <vector>

#include "fscan/category.hpp"
#include "fscan/scan.hpp"

namespace fscan {

struct BenchRow {
    std::size_t cells = 0;
    unsigned workers = 0;
    double seconds = 0.0;
    double compositions_per_second = 0.0;
    double speedup = 0.0;  // vs workers = 1 at the same size
};

namespace detail {

// MatCategory wrapper that counts compose calls.
struct CountingMatCategory {
    using Object = std::size_t;
    using Morphism = DenseMatrix;

    MatCategory<RealSemiring> inner;
    std::atomic<std::uint64_t>* compositions;

    Object source(const Morphism& m) const { return inner.source(m); }
    Object target(const Morphism& m) const { return inner.target(m); }
    Morphism identity(Object d) const { return inner.identity(d); }
    Morphism compose(const Morphism& f, const Morphism& g) const {
        compositions->fetch_add(1, std::memory_order_relaxed);
        return inner.compose(f, g);
    }
    bool objects_equal(Object a, Object b) const { return a == b; }
};

}  // namespace detail

// Times scan_parallel over `cells` random dim x dim matrix morphisms for
// each worker count. A workers = 1 baseline is always measured first.
inline std::vector<BenchRow> run_matrix_bench(std::size_t cells,
                                              std::vector<unsigned> workers_list,
                                              std::size_t dim = 32, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    IntervalAssignment<detail::CountingMatCategory> asg;
    asg.objects.assign(cells + 1, dim);
    asg.cells.reserve(cells);
    for (std::size_t k = 0; k < cells; ++k) {
        DenseMatrix m(dim, dim);
        for (double& v : m.entries()) v = dist(rng) / static_cast<double>(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) += 1.0;
        asg.cells.push_back(std::move(m));
    }

    if (workers_list.empty()) workers_list.push_back(detail::default_workers());
    if (workers_list.front() != 1) workers_list.insert(workers_list.begin(), 1u);

    std::atomic<std::uint64_t> compositions{0};
    const detail::CountingMatCategory cat{MatCategory<RealSemiring>{}, &compositions};

    std::vector<BenchRow> rows;
    double baseline = 0.0;
    for (unsigned w : workers_list) {
        compositions.store(0);
        const auto start = std::chrono::steady_clock::now();
        const auto result = scan_parallel(asg, cat, w);
        const auto stop = std::chrono::steady_clock::now();
        const double seconds = std::chrono::duration<double>(stop - start).count();
        if (w == 1 || baseline == 0.0) baseline = seconds;
        BenchRow row;
        row.cells = cells;
        row.workers = w;
        row.seconds = seconds;
        row.compositions_per_second =
            seconds > 0 ? static_cast<double>(compositions.load()) / seconds : 0.0;
        row.speedup = seconds > 0 ? baseline / seconds : 0.0;
        rows.push_back(row);
        (void)result;
    }
    return rows;
}

}  // namespace fscan
