#pragma once

#include <string>
#include <vector>

#include "fscan/grid.hpp"
#include "fscan/scan.hpp"

namespace fscan {

// Prefix grid of 2-cells: at(i, j) = F([0,i] x [0,j]) for 1 <= i <= m,
// 1 <= j <= n.
template <CrossedModule XM>
struct Scan2dResult {
    std::size_t extent_x = 0, extent_y = 0;
    std::vector<TwoCell<XM>> cells;

    const TwoCell<XM>& at(std::size_t i, std::size_t j) const {
        return cells[(j - 1) * extent_x + (i - 1)];
    }
    TwoCell<XM>& at(std::size_t i, std::size_t j) { return cells[(j - 1) * extent_x + (i - 1)]; }
};

// Two-phase scan: horizontal strips per row (rows run in parallel), then
// vertical composition down each column (columns run in parallel).
template <CrossedModule XM>
Scan2dResult<XM> scan_2d(const TwoCellGridAssignment<XM>& grid, const XM& xm,
                         unsigned workers = detail::default_workers()) {
    const auto bad = validate_grid(grid, xm);
    if (!bad.empty())
        throw BoundaryMismatch("grid face (" + std::to_string(bad.front().first) + "," +
                               std::to_string(bad.front().second) + ") violates the boundary law");
    const std::size_t m = grid.extent_x, n = grid.extent_y;
    Scan2dResult<XM> out;
    out.extent_x = m;
    out.extent_y = n;
    if (m == 0 || n == 0) return out;
    out.cells.assign(m * n, identity_cell_v(xm.g_unit(), xm));

    // Row-wise scan: out[i][j] <- F([0,i] x [j-1,j]).
    detail::parallel_for(n, workers, [&](std::size_t j) {
        TwoCell<XM> strip = elementary_cell(grid, 0, j);
        out.at(1, j + 1) = strip;
        for (std::size_t i = 1; i < m; ++i) {
            strip = compose_h(strip, elementary_cell(grid, i, j), xm);
            out.at(i + 1, j + 1) = strip;
        }
    });

    // Column-wise scan: compose the strips vertically.
    detail::parallel_for(m, workers, [&](std::size_t i) {
        for (std::size_t j = 1; j < n; ++j)
            out.at(i + 1, j + 1) = compose_v(out.at(i + 1, j), out.at(i + 1, j + 1), xm);
    });
    return out;
}

}  // namespace fscan
