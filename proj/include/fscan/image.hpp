#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fscan/gl.hpp"
#include "fscan/grid.hpp"
#include "fscan/linalg.hpp"

namespace fscan {

// Parameters of the RGB edge assignment: three 2x2 generators for the P
// block, three commuting 3x3 generators for the D block, and three scalars
// for the S block.
struct ImageParams {
    std::array<DenseMatrix, 3> a;
    std::array<DenseMatrix, 3> q;
    std::array<double, 3> s{};

    // A_k = 0.1 k [[0,1],[-1,0]], Q_k diagonal (hence commuting), s_k = 0.1 k.
    static ImageParams defaults() {
        ImageParams params;
        for (int k = 0; k < 3; ++k) {
            params.a[k] = mat_scale(0.1 * (k + 1), DenseMatrix(2, 2, {0, 1, -1, 0}));
            params.s[k] = 0.1 * (k + 1);
        }
        params.q[0] = DenseMatrix(3, 3, {0.1, 0, 0, 0, 0.2, 0, 0, 0, 0.3});
        params.q[1] = DenseMatrix(3, 3, {0.2, 0, 0, 0, 0.3, 0, 0, 0, 0.1});
        params.q[2] = DenseMatrix(3, 3, {0.3, 0, 0, 0, 0.1, 0, 0, 0, 0.2});
        return params;
    }

    // The Q_k must pairwise commute or the plaquette boundary product
    // leaves the image of the feedback map (no valid face exists).
    void validate() const {
        for (int k = 0; k < 3; ++k) {
            if (a[k].rows() != 2 || a[k].cols() != 2)
                throw DimensionMismatch("image parameter A_" + std::to_string(k + 1) +
                                        " must be 2x2");
            if (q[k].rows() != 3 || q[k].cols() != 3)
                throw DimensionMismatch("image parameter Q_" + std::to_string(k + 1) +
                                        " must be 3x3");
        }
        for (int j = 0; j < 3; ++j)
            for (int k = j + 1; k < 3; ++k) {
                const double dev = mat_distance(mat_mul(q[j], q[k]), mat_mul(q[k], q[j]));
                if (dev > 1e-10)
                    throw ValidationError("Q_" + std::to_string(j + 1) + " and Q_" +
                                          std::to_string(k + 1) + " do not commute (deviation " +
                                          std::to_string(dev) + ")");
            }
    }
};

// RGB image on grid points: pixel (i, j) with i along x in [0, width) and
// j along y in [0, height).
struct RgbImage {
    std::size_t width = 0, height = 0;
    std::vector<std::array<double, 3>> pixels;  // index i + j * width

    const std::array<double, 3>& at(std::size_t i, std::size_t j) const {
        return pixels[j * width + i];
    }
    std::array<double, 3>& at(std::size_t i, std::size_t j) { return pixels[j * width + i]; }
};

// The edge assignment eta(z, zbar), a G element built from dz = z - zbar:
//   U: P = exp(sum A_k dz_k), R = [sin dz_1, cos dz_3], S = exp(sum s_k dz_k)
//   V: same P, B = [[0, dz_1, 0],[dz_3, 0, dz_2]], D = exp(sum Q_k dz_k).
inline GLGroupElement image_edge_eta(const std::array<double, 3>& z,
                                     const std::array<double, 3>& zbar,
                                     const ImageParams& params) {
    const std::array<double, 3> dz{z[0] - zbar[0], z[1] - zbar[1], z[2] - zbar[2]};
    DenseMatrix pgen(2, 2), dgen(3, 3);
    double sgen = 0.0;
    for (int k = 0; k < 3; ++k) {
        pgen = mat_add(pgen, mat_scale(dz[k], params.a[k]));
        dgen = mat_add(dgen, mat_scale(dz[k], params.q[k]));
        sgen += params.s[k] * dz[k];
    }
    const DenseMatrix p = mat_exp(pgen);

    DenseMatrix u(3, 3);
    u.set_block(0, 0, p);
    u(2, 0) = std::sin(dz[0]);
    u(2, 1) = std::cos(dz[2]);
    u(2, 2) = std::exp(sgen);

    DenseMatrix v(5, 5);
    v.set_block(0, 0, p);
    v.set_block(0, 2, DenseMatrix(2, 3, {0, dz[0], 0, dz[2], 0, dz[1]}));
    v.set_block(2, 2, mat_exp(dgen));
    return {u, v};
}

// The face value N block, straight from the displayed quadratic expressions
// in the corner pixels.
inline DenseMatrix image_face_n(const std::array<double, 3>& z00, const std::array<double, 3>& z10,
                                const std::array<double, 3>& z01,
                                const std::array<double, 3>& z11) {
    double first = 0.0, third = 0.0;
    for (int k = 0; k < 3; ++k) {
        first += (z11[k] - z00[k]) * (z11[k] - z00[k]);
        third += (z11[k] - z10[k]) * (z11[k] - z01[k]);
    }
    return DenseMatrix(1, 3, {first, 0.0, third});
}

// Solves the face of one plaquette from its boundary product
// south . east . north^-1 . west^-1. The product's S and D blocks must be
// the identity (commuting Q_k guarantee this up to rounding); P is read off
// both factors and averaged, R and B are read off U and V, and the free N
// block is supplied by the caller.
inline GLHElement solve_plaquette_face(const GLGroupElement& south, const GLGroupElement& east,
                                       const GLGroupElement& north, const GLGroupElement& west,
                                       const DenseMatrix& n_block, const GLCrossedModule& xm,
                                       const std::string& where = "") {
    const std::size_t n = xm.n(), p = xm.p(), q = xm.q();
    const auto boundary =
        xm.g_mul(xm.g_mul(xm.g_mul(south, east), xm.g_inv(north)), xm.g_inv(west));
    const double s_dev = mat_distance(boundary.u.block(n, n, p, p), identity_matrix(p));
    const double d_dev = mat_distance(boundary.v.block(n, n, q, q), identity_matrix(q));
    if (s_dev > 1e-8 || d_dev > 1e-8)
        throw NotInFeedbackImage("boundary product is not in the feedback image" + where +
                                 " (S deviation " + std::to_string(s_dev) + ", D deviation " +
                                 std::to_string(d_dev) + ")");
    const DenseMatrix pu = boundary.u.block(0, 0, n, n);
    const DenseMatrix pv = boundary.v.block(0, 0, n, n);
    if (mat_distance(pu, pv) > 1e-9)
        throw NotInFeedbackImage("U and V disagree on the shared P block" + where);
    return xm.make_h(mat_scale(0.5, mat_add(pu, pv)), boundary.v.block(0, n, n, q),
                     boundary.u.block(n, 0, p, n), n_block);
}

// Builds the full grid assignment for an image: edges through eta, faces
// solved from the plaquette boundary products.
inline TwoCellGridAssignment<GLCrossedModule> image_grid_assignment(const RgbImage& image,
                                                                    const ImageParams& params,
                                                                    const GLCrossedModule& xm) {
    params.validate();
    if (xm.n() != 2 || xm.p() != 1 || xm.q() != 3)
        throw DimensionMismatch("image pipeline expects the (2,1,3) crossed module");
    if (image.width < 2 || image.height < 2)
        throw ValidationError("image must be at least 2x2 pixels");
    if (image.pixels.size() != image.width * image.height)
        throw DimensionMismatch("pixel count does not match image header");
    const std::size_t m = image.width - 1, n = image.height - 1;
    auto grid = TwoCellGridAssignment<GLCrossedModule>::sized(m, n, xm);

    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i < m; ++i)
            grid.hcell(i, j) = image_edge_eta(image.at(i + 1, j), image.at(i, j), params);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= m; ++i)
            grid.vcell(i, j) = image_edge_eta(image.at(i, j + 1), image.at(i, j), params);

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            const std::string where =
                " at face (" + std::to_string(i) + "," + std::to_string(j) + ")";
            grid.face(i, j) = solve_plaquette_face(
                grid.hcell(i, j), grid.vcell(i + 1, j), grid.hcell(i, j + 1), grid.vcell(i, j),
                image_face_n(image.at(i, j), image.at(i + 1, j), image.at(i, j + 1),
                             image.at(i + 1, j + 1)),
                xm, where);
        }
    }
    return grid;
}

// Abelian delooping grid: trivial edges, faces are the values themselves.
// values is an m x n grid stored x-major (index i + j * m).
template <class Op>
TwoCellGridAssignment<AbelianCrossedModule<Op>> abelian_grid_assignment(
    const std::vector<double>& values, std::size_t m, std::size_t n,
    const AbelianCrossedModule<Op>& xm) {
    if (values.size() != m * n)
        throw DimensionMismatch("value count " + std::to_string(values.size()) +
                                " does not match grid " + std::to_string(m) + "x" +
                                std::to_string(n));
    auto grid = TwoCellGridAssignment<AbelianCrossedModule<Op>>::sized(m, n, xm);
    grid.faces = values;
    return grid;
}

}  // namespace fscan
