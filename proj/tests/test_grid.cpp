#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fscan/image.hpp"
#include "fscan/scan2d.hpp"

using namespace fscan;

namespace {

// Double-loop oracle for rectangle sums.
double rect_sum_oracle(const std::vector<double>& values, std::size_t m, const Rect& r) {
    double total = 0.0;
    for (long long j = r.y0; j < r.y1; ++j)
        for (long long i = r.x0; i < r.x1; ++i)
            total += values[static_cast<std::size_t>(j) * m + static_cast<std::size_t>(i)];
    return total;
}

RgbImage random_image(std::mt19937_64& rng, std::size_t w, std::size_t h) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    RgbImage img;
    img.width = w;
    img.height = h;
    img.pixels.resize(w * h);
    for (auto& px : img.pixels) px = {dist(rng), dist(rng), dist(rng)};
    return img;
}

}  // namespace

TEST_CASE("abelian grid lifts count cells") {
    const AbelianSumCrossedModule xm;
    const auto grid = abelian_grid_assignment(std::vector<double>(16, 1.0), 4, 4, xm);
    CHECK(validate_grid(grid, xm).empty());
    CHECK(free_lift(grid, {0, 4, 0, 4}, xm).face == 16.0);
    CHECK(free_lift(grid, {2, 3, 1, 2}, xm).face == 1.0);
}

TEST_CASE("abelian lift of any rectangle matches the double loop") {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> val(-9, 9);
    const std::size_t m = 5, n = 7;
    std::vector<double> values(m * n);
    for (auto& v : values) v = val(rng);
    const AbelianSumCrossedModule xm;
    const auto grid = abelian_grid_assignment(values, m, n, xm);
    std::uniform_int_distribution<long long> xs(0, m), ys(0, n);
    for (int t = 0; t < 50; ++t) {
        Rect r{xs(rng), xs(rng), ys(rng), ys(rng)};
        if (r.x0 > r.x1) std::swap(r.x0, r.x1);
        if (r.y0 > r.y1) std::swap(r.y0, r.y1);
        CHECK(free_lift(grid, r, xm).face == rect_sum_oracle(values, m, r));
    }
}

TEST_CASE("degenerate rectangles lift to identity cells") {
    const AbelianSumCrossedModule xm;
    const auto grid = abelian_grid_assignment({1, 2, 3, 4}, 2, 2, xm);
    CHECK(free_lift(grid, {1, 1, 0, 2}, xm).face == xm.h_unit());
    CHECK(free_lift(grid, {0, 2, 1, 1}, xm).face == xm.h_unit());
    CHECK(free_lift(grid, {1, 1, 1, 1}, xm).face == xm.h_unit());
    CHECK_THROWS_AS(free_lift(grid, {0, 3, 0, 2}, xm), OutOfRange);
    CHECK_THROWS_AS(free_lift(grid, {-1, 2, 0, 2}, xm), OutOfRange);
}

TEST_CASE("2d scan equals the summed-area table") {
    std::mt19937_64 rng(62);
    std::uniform_int_distribution<int> val(-10, 10);
    const std::size_t m = 16, n = 16;
    std::vector<double> values(m * n);
    for (auto& v : values) v = val(rng);
    const AbelianSumCrossedModule xm;
    const auto grid = abelian_grid_assignment(values, m, n, xm);
    const auto result = scan_2d(grid, xm, 4);
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            CHECK(result.at(i, j).face ==
                  rect_sum_oracle(values, m,
                                  {0, static_cast<long long>(i), 0, static_cast<long long>(j)}));
    // identical across worker counts
    const auto again = scan_2d(grid, xm, 1);
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = 1; j <= n; ++j) CHECK(again.at(i, j).face == result.at(i, j).face);
}

TEST_CASE("2d scan of the max monoid") {
    const AbelianMaxCrossedModule xm;
    const std::vector<double> values{1, 5, 2, 0, 3, 4};  // 3x2
    const auto grid = abelian_grid_assignment(values, 3, 2, xm);
    const auto result = scan_2d(grid, xm, 2);
    CHECK(result.at(1, 1).face == 1);
    CHECK(result.at(2, 1).face == 5);
    CHECK(result.at(3, 2).face == 5);
    CHECK(result.at(1, 2).face == 1);
}

TEST_CASE("scan_2d row one equals the strip scan") {
    std::mt19937_64 rng(63);
    const GLCrossedModule xm(2, 1, 3);
    const auto img = random_image(rng, 5, 4);
    const auto grid = image_grid_assignment(img, ImageParams::defaults(), xm);
    const auto result = scan_2d(grid, xm, 3);
    TwoCell<GLCrossedModule> strip = elementary_cell(grid, 0, 0);
    CHECK(two_cell_distance(result.at(1, 1), strip, xm) == 0.0);
    for (std::size_t i = 1; i < grid.extent_x; ++i) {
        strip = compose_h(strip, elementary_cell(grid, i, 0), xm);
        CHECK(two_cell_distance(result.at(i + 1, 1), strip, xm) < 1e-12);
    }
}

TEST_CASE("eta at zero increment has the documented shape") {
    const auto params = ImageParams::defaults();
    const std::array<double, 3> z{0.4, 0.5, 0.6};
    const auto g = image_edge_eta(z, z, params);
    CHECK(approx_equal(g.u.block(0, 0, 2, 2), identity_matrix(2), 1e-14));
    CHECK(g.u(2, 0) == 0.0);   // sin 0
    CHECK(g.u(2, 1) == 1.0);   // cos 0
    CHECK(g.u(2, 2) == 1.0);   // exp 0
    CHECK(approx_equal(g.v.block(2, 2, 3, 3), identity_matrix(3), 1e-14));
    CHECK(max_abs(g.v.block(0, 2, 2, 3)) == 0.0);
    // not the group unit: the R block is [0, 1]
    const GLCrossedModule xm(2, 1, 3);
    CHECK(xm.g_dist(g, xm.g_unit()) == 1.0);
}

TEST_CASE("eta satisfies the group-element structure") {
    std::mt19937_64 rng(64);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    const auto params = ImageParams::defaults();
    const GLCrossedModule xm(2, 1, 3);
    for (int t = 0; t < 10; ++t) {
        const std::array<double, 3> z{dist(rng), dist(rng), dist(rng)};
        const std::array<double, 3> zb{dist(rng), dist(rng), dist(rng)};
        const auto g = image_edge_eta(z, zb, params);
        CHECK(xm.g_structure_violation(g) < 1e-14);
        // commuting Q make the D blocks of eta(z, zb) and eta(zb, z) inverse
        const auto back = image_edge_eta(zb, z, params);
        const auto d_prod = mat_mul(g.v.block(2, 2, 3, 3), back.v.block(2, 2, 3, 3));
        CHECK(approx_equal(d_prod, identity_matrix(3), 1e-12));
    }
}

TEST_CASE("image parameters validate commutation") {
    auto params = ImageParams::defaults();
    params.validate();
    params.q[0] = DenseMatrix(3, 3, {0, 1, 0, 0, 0, 1, 0, 0, 0});
    params.q[1] = DenseMatrix(3, 3, {0, 0, 0, 1, 0, 0, 0, 1, 0});
    CHECK_THROWS_AS(params.validate(), ValidationError);
    params.q[0] = DenseMatrix(2, 2);
    CHECK_THROWS_AS(params.validate(), DimensionMismatch);
}

TEST_CASE("image grids validate by construction") {
    std::mt19937_64 rng(65);
    const GLCrossedModule xm(2, 1, 3);
    const auto params = ImageParams::defaults();

    RgbImage constant;
    constant.width = constant.height = 3;
    constant.pixels.assign(9, {0.3, 0.6, 0.9});
    CHECK(validate_grid(image_grid_assignment(constant, params, xm), xm).empty());

    const auto img = random_image(rng, 3, 3);
    auto grid = image_grid_assignment(img, params, xm);
    CHECK(validate_grid(grid, xm).empty());

    // replacing a face by the H unit breaks the boundary law there
    grid.face(1, 1) = xm.h_unit();
    const auto bad = validate_grid(grid, xm);
    REQUIRE(bad.size() == 1);
    CHECK(bad.front() == std::make_pair(std::size_t{1}, std::size_t{1}));
    CHECK_THROWS_AS(scan_2d(grid, xm, 2), BoundaryMismatch);
}

TEST_CASE("face N block matches the displayed quadratic") {
    RgbImage img;
    img.width = img.height = 2;
    img.pixels = {{1, 2, 3}, {0, 1, 1}, {2, 0, 1}, {4, 2, 2}};  // z00 z10 z01 z11
    const auto n = image_face_n(img.at(0, 0), img.at(1, 0), img.at(0, 1), img.at(1, 1));
    // first = (4-1)^2 + (2-2)^2 + (2-3)^2 = 10
    // third = (4-0)(4-2) + (2-1)(2-0) + (2-1)(2-1) = 11
    CHECK(n == DenseMatrix(1, 3, {10, 0, 11}));
}

TEST_CASE("free lift is independent of the split strategy") {
    std::mt19937_64 rng(66);
    const GLCrossedModule xm(2, 1, 3);
    const auto img = random_image(rng, 4, 4);
    const auto grid = image_grid_assignment(img, ImageParams::defaults(), xm);
    const Rect full{0, 3, 0, 3};
    const auto a = free_lift(grid, full, xm, SplitStrategy::leftmost());
    const auto b = free_lift(grid, full, xm, SplitStrategy::midpoint());
    const auto c = free_lift(grid, full, xm, SplitStrategy::random_seeded(7));
    CHECK(two_cell_distance(a, b, xm) < 1e-8);
    CHECK(two_cell_distance(a, c, xm) < 1e-8);
    CHECK(boundary_violation(a, xm) < 1e-9);
}

TEST_CASE("free lift composes across bipartitions") {
    std::mt19937_64 rng(67);
    const GLCrossedModule xm(2, 1, 3);
    const auto img = random_image(rng, 5, 3);
    const auto grid = image_grid_assignment(img, ImageParams::defaults(), xm);
    const Rect full{0, 4, 0, 2};
    const auto whole = free_lift(grid, full, xm);
    const auto left = free_lift(grid, {0, 2, 0, 2}, xm);
    const auto right = free_lift(grid, {2, 4, 0, 2}, xm);
    CHECK(two_cell_distance(whole, compose_h(left, right, xm), xm) < 1e-8);
    const auto bottom = free_lift(grid, {0, 4, 0, 1}, xm);
    const auto top = free_lift(grid, {0, 4, 1, 2}, xm);
    CHECK(two_cell_distance(whole, compose_v(bottom, top, xm), xm) < 1e-8);
}

TEST_CASE("2d scan equals the free lift on an image grid") {
    std::mt19937_64 rng(68);
    const GLCrossedModule xm(2, 1, 3);
    const auto img = random_image(rng, 5, 4);
    const auto grid = image_grid_assignment(img, ImageParams::defaults(), xm);
    const auto result = scan_2d(grid, xm, 4);
    for (std::size_t i = 1; i <= grid.extent_x; ++i)
        for (std::size_t j = 1; j <= grid.extent_y; ++j) {
            const auto direct = free_lift(
                grid, {0, static_cast<long long>(i), 0, static_cast<long long>(j)}, xm);
            CHECK(two_cell_distance(result.at(i, j), direct, xm) < 1e-8);
        }
}

TEST_CASE("plaquette solving rejects incompatible boundaries") {
    std::mt19937_64 rng(69);
    const GLCrossedModule xm(2, 1, 3);
    const auto params = ImageParams::defaults();
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    auto pix = [&] { return std::array<double, 3>{dist(rng), dist(rng), dist(rng)}; };
    // four unrelated eta edges: the S/D blocks of the boundary product are
    // far from the identity
    const auto south = image_edge_eta(pix(), pix(), params);
    const auto east = image_edge_eta(pix(), pix(), params);
    const auto north = image_edge_eta(pix(), pix(), params);
    const auto west = image_edge_eta(pix(), pix(), params);
    CHECK_THROWS_AS(solve_plaquette_face(south, east, north, west, DenseMatrix(1, 3), xm),
                    NotInFeedbackImage);
}
