#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fscan/crossed_module.hpp"
#include "fscan/error.hpp"

namespace fscan {

// Rectangle [x0, x1] x [y0, y1] with integer corners, x0 <= x1, y0 <= y1.
struct Rect {
    long long x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    long long width() const { return x1 - x0; }
    long long height() const { return y1 - y0; }
};

// Elementary data on an m x n grid of unit squares: G-valued edges and
// H-valued faces. hcell(i,j) sits on [i,i+1] x {j}; vcell(i,j) on
// {i} x [j,j+1]; face(i,j) on [i,i+1] x [j,j+1].
template <CrossedModule XM>
struct TwoCellGridAssignment {
    std::size_t extent_x = 0, extent_y = 0;
    std::vector<typename XM::G> hcells;  // (extent_x) * (extent_y + 1)
    std::vector<typename XM::G> vcells;  // (extent_x + 1) * (extent_y)
    std::vector<typename XM::H> faces;   // extent_x * extent_y

    static TwoCellGridAssignment sized(std::size_t m, std::size_t n, const XM& xm) {
        TwoCellGridAssignment grid;
        grid.extent_x = m;
        grid.extent_y = n;
        grid.hcells.assign(m * (n + 1), xm.g_unit());
        grid.vcells.assign((m + 1) * n, xm.g_unit());
        grid.faces.assign(m * n, xm.h_unit());
        return grid;
    }

    typename XM::G& hcell(std::size_t i, std::size_t j) { return hcells[j * extent_x + i]; }
    const typename XM::G& hcell(std::size_t i, std::size_t j) const {
        return hcells[j * extent_x + i];
    }
    typename XM::G& vcell(std::size_t i, std::size_t j) { return vcells[j * (extent_x + 1) + i]; }
    const typename XM::G& vcell(std::size_t i, std::size_t j) const {
        return vcells[j * (extent_x + 1) + i];
    }
    typename XM::H& face(std::size_t i, std::size_t j) { return faces[j * extent_x + i]; }
    const typename XM::H& face(std::size_t i, std::size_t j) const {
        return faces[j * extent_x + i];
    }
};

template <CrossedModule XM>
TwoCell<XM> elementary_cell(const TwoCellGridAssignment<XM>& grid, std::size_t i, std::size_t j) {
    return {grid.hcell(i, j), grid.vcell(i + 1, j), grid.hcell(i, j + 1), grid.vcell(i, j),
            grid.face(i, j)};
}

// Grid cells whose face violates the boundary law beyond the tolerance.
template <CrossedModule XM>
std::vector<std::pair<std::size_t, std::size_t>> validate_grid(
    const TwoCellGridAssignment<XM>& grid, const XM& xm) {
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    for (std::size_t j = 0; j < grid.extent_y; ++j)
        for (std::size_t i = 0; i < grid.extent_x; ++i)
            if (boundary_violation(elementary_cell(grid, i, j), xm) > xm.tolerance())
                bad.emplace_back(i, j);
    return bad;
}

// Where to cut a rectangle while lifting. All strategies yield the same
// lift value; exercising several is a well-definedness test.
struct SplitStrategy {
    enum class Kind : std::uint8_t { leftmost, midpoint, seeded };
    Kind kind = Kind::leftmost;
    std::uint64_t seed = 0;

    static SplitStrategy leftmost() { return {Kind::leftmost, 0}; }
    static SplitStrategy midpoint() { return {Kind::midpoint, 0}; }
    static SplitStrategy random_seeded(std::uint64_t seed) { return {Kind::seeded, seed}; }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// (horizontal?, cut coordinate) for a rect with area >= 2.
inline std::pair<bool, long long> choose_split(const Rect& r, const SplitStrategy& s) {
    const long long w = r.width(), h = r.height();
    switch (s.kind) {
        case SplitStrategy::Kind::leftmost:
            if (w >= 2) return {true, r.x0 + 1};
            return {false, r.y0 + 1};
        case SplitStrategy::Kind::midpoint:
            if (h >= 2) return {false, r.y0 + h / 2};
            return {true, r.x0 + w / 2};
        case SplitStrategy::Kind::seeded: {
            std::uint64_t key = s.seed;
            for (long long v : {r.x0, r.x1, r.y0, r.y1})
                key = splitmix64(key ^ static_cast<std::uint64_t>(v));
            const bool horizontal = (w >= 2) && (h < 2 || (key & 1));
            const std::uint64_t pick = splitmix64(key);
            if (horizontal) return {true, r.x0 + 1 + static_cast<long long>(pick % (w - 1))};
            return {false, r.y0 + 1 + static_cast<long long>(pick % (h - 1))};
        }
    }
    throw Error("unreachable split strategy");
}

template <CrossedModule XM>
typename XM::G lift_hstrip(const TwoCellGridAssignment<XM>& grid, long long x0, long long x1,
                           long long y, const XM& xm) {
    if (x0 == x1) return xm.g_unit();
    typename XM::G acc = grid.hcell(static_cast<std::size_t>(x0), static_cast<std::size_t>(y));
    for (long long i = x0 + 1; i < x1; ++i)
        acc = xm.g_mul(acc, grid.hcell(static_cast<std::size_t>(i), static_cast<std::size_t>(y)));
    return acc;
}

template <CrossedModule XM>
typename XM::G lift_vstrip(const TwoCellGridAssignment<XM>& grid, long long x, long long y0,
                           long long y1, const XM& xm) {
    if (y0 == y1) return xm.g_unit();
    typename XM::G acc = grid.vcell(static_cast<std::size_t>(x), static_cast<std::size_t>(y0));
    for (long long j = y0 + 1; j < y1; ++j)
        acc = xm.g_mul(acc, grid.vcell(static_cast<std::size_t>(x), static_cast<std::size_t>(j)));
    return acc;
}

}  // namespace detail

// The unique double-functor value on a rectangle, computed by recursive
// splitting. The result is independent of the split strategy.
template <CrossedModule XM>
TwoCell<XM> free_lift(const TwoCellGridAssignment<XM>& grid, const Rect& rect, const XM& xm,
                      const SplitStrategy& strategy = SplitStrategy::leftmost()) {
    if (rect.x0 > rect.x1 || rect.y0 > rect.y1)
        throw OutOfRange("rectangle has reversed corners");
    if (rect.x0 < 0 || rect.y0 < 0 || rect.x1 > static_cast<long long>(grid.extent_x) ||
        rect.y1 > static_cast<long long>(grid.extent_y))
        throw OutOfRange("rectangle [" + std::to_string(rect.x0) + "," + std::to_string(rect.x1) +
                         "]x[" + std::to_string(rect.y0) + "," + std::to_string(rect.y1) +
                         "] outside grid " + std::to_string(grid.extent_x) + "x" +
                         std::to_string(grid.extent_y));
    const long long w = rect.width(), h = rect.height();
    if (w == 0)
        return identity_cell_h(detail::lift_vstrip(grid, rect.x0, rect.y0, rect.y1, xm), xm);
    if (h == 0)
        return identity_cell_v(detail::lift_hstrip(grid, rect.x0, rect.x1, rect.y0, xm), xm);
    if (w == 1 && h == 1)
        return elementary_cell(grid, static_cast<std::size_t>(rect.x0),
                               static_cast<std::size_t>(rect.y0));
    const auto [horizontal, cut] = detail::choose_split(rect, strategy);
    if (horizontal) {
        const auto left = free_lift(grid, Rect{rect.x0, cut, rect.y0, rect.y1}, xm, strategy);
        const auto right = free_lift(grid, Rect{cut, rect.x1, rect.y0, rect.y1}, xm, strategy);
        return compose_h(left, right, xm);
    }
    const auto bottom = free_lift(grid, Rect{rect.x0, rect.x1, rect.y0, cut}, xm, strategy);
    const auto top = free_lift(grid, Rect{rect.x0, rect.x1, cut, rect.y1}, xm, strategy);
    return compose_v(bottom, top, xm);
}

}  // namespace fscan
