#pragma once

#include <cstddef>
#include <random>
#include <string>

#include "fscan/crossed_module.hpp"
#include "fscan/linalg.hpp"
#include "fscan/matrix.hpp"

namespace fscan {

// Element of the group G of the general linear crossed module: a pair of
// block matrices sharing the same top-left P block,
//   U = [[P, 0],[R, S]]   of size (n+p) x (n+p),
//   V = [[P, B],[0, D]]   of size (n+q) x (n+q),
// with P, S, D invertible.
struct GLGroupElement {
    DenseMatrix u, v;
};

// Element of H = GL^{n,p,q}_{-1}: the (n+p) x (n+q) block [[P - I, B],[R, N]].
struct GLHElement {
    DenseMatrix block;
};

// The general linear crossed module. The group product is diagrammatic:
// g_mul(a, b) multiplies b's matrices on the left, which makes the feedback
// a homomorphism for the blockwise H product below.
class GLCrossedModule {
public:
    using G = GLGroupElement;
    using H = GLHElement;

    GLCrossedModule(std::size_t n, std::size_t p, std::size_t q, double tol = 1e-9)
        : n_(n), p_(p), q_(q), tol_(tol) {}

    std::size_t n() const { return n_; }
    std::size_t p() const { return p_; }
    std::size_t q() const { return q_; }

    // -- G ops --------------------------------------------------------------
    G g_mul(const G& a, const G& b) const { return {mat_mul(b.u, a.u), mat_mul(b.v, a.v)}; }
    G g_inv(const G& a) const { return {mat_inv(a.u), mat_inv(a.v)}; }
    G g_unit() const { return {identity_matrix(n_ + p_), identity_matrix(n_ + q_)}; }
    double g_dist(const G& a, const G& b) const {
        return std::max(mat_distance(a.u, b.u), mat_distance(a.v, b.v));
    }

    // -- H ops --------------------------------------------------------------
    H h_unit() const { return {DenseMatrix(n_ + p_, n_ + q_)}; }
    double h_dist(const H& a, const H& b) const { return mat_distance(a.block, b.block); }

    H h_mul(const H& a, const H& b) const {
        check_h(a);
        check_h(b);
        const DenseMatrix pa = p_of(a), pb = p_of(b);
        const DenseMatrix ba = b_of(a), bb = b_of(b);
        const DenseMatrix ra = r_of(a), rb = r_of(b);
        const DenseMatrix na = n_of(a), nb = n_of(b);
        return make_h(mat_mul(pb, pa), mat_add(mat_mul(pb, ba), bb), mat_add(mat_mul(rb, pa), ra),
                      mat_add(mat_mul(rb, ba), mat_add(na, nb)));
    }

    H h_inv(const H& a) const {
        check_h(a);
        const DenseMatrix pi = mat_inv(p_of(a));
        const DenseMatrix b = b_of(a), r = r_of(a), n = n_of(a);
        return make_h(pi, mat_scale(-1.0, mat_mul(pi, b)), mat_scale(-1.0, mat_mul(r, pi)),
                      mat_add(mat_scale(-1.0, n), mat_mul(r, mat_mul(pi, b))));
    }

    // -- crossed module structure --------------------------------------------
    G feedback(const H& h) const {
        check_h(h);
        const DenseMatrix p = p_of(h);
        DenseMatrix u = identity_matrix(n_ + p_);
        u.set_block(0, 0, p);
        u.set_block(n_, 0, r_of(h));
        DenseMatrix v = identity_matrix(n_ + q_);
        v.set_block(0, 0, p);
        v.set_block(0, n_, b_of(h));
        return {u, v};
    }

    // Conjugation-like action of (U, V): the raw block maps through
    // U^{-1} . block . V and is reinterpreted as an H element.
    H act(const G& g, const H& h) const {
        check_h(h);
        if (g.u.rows() != n_ + p_ || g.v.rows() != n_ + q_)
            throw DimensionMismatch("group element has wrong block sizes");
        return {lu_solve(g.u, mat_mul(h.block, g.v))};
    }

    double tolerance() const { return tol_; }

    // -- block accessors ------------------------------------------------------
    DenseMatrix p_of(const H& h) const {
        DenseMatrix p = h.block.block(0, 0, n_, n_);
        for (std::size_t i = 0; i < n_; ++i) p(i, i) += 1.0;
        return p;
    }
    DenseMatrix b_of(const H& h) const { return h.block.block(0, n_, n_, q_); }
    DenseMatrix r_of(const H& h) const { return h.block.block(n_, 0, p_, n_); }
    DenseMatrix n_of(const H& h) const { return h.block.block(n_, n_, p_, q_); }

    H make_h(const DenseMatrix& p, const DenseMatrix& b, const DenseMatrix& r,
             const DenseMatrix& n) const {
        DenseMatrix block(n_ + p_, n_ + q_);
        DenseMatrix pm = p;
        for (std::size_t i = 0; i < n_; ++i) pm(i, i) -= 1.0;
        block.set_block(0, 0, pm);
        block.set_block(0, n_, b);
        block.set_block(n_, 0, r);
        block.set_block(n_, n_, n);
        return {block};
    }

    // Largest violation of the structural G invariants: zero blocks where
    // required and agreement of the shared P block.
    double g_structure_violation(const G& g) const {
        double worst = max_abs(g.u.block(0, n_, n_, p_));
        worst = std::max(worst, max_abs(g.v.block(n_, 0, q_, n_)));
        worst = std::max(worst, mat_distance(g.u.block(0, 0, n_, n_), g.v.block(0, 0, n_, n_)));
        return worst;
    }

    // -- deterministic samplers (entries in [-1, 1], invertible blocks via
    //    a small perturbation of the identity) -------------------------------
    G random_g(std::mt19937_64& rng) const {
        DenseMatrix p = near_identity(n_, rng);
        DenseMatrix u = DenseMatrix(n_ + p_, n_ + p_);
        u.set_block(0, 0, p);
        u.set_block(n_, 0, uniform(p_, n_, rng));
        u.set_block(n_, n_, near_identity(p_, rng));
        DenseMatrix v = DenseMatrix(n_ + q_, n_ + q_);
        v.set_block(0, 0, p);
        v.set_block(0, n_, uniform(n_, q_, rng));
        v.set_block(n_, n_, near_identity(q_, rng));
        return {u, v};
    }

    H random_h(std::mt19937_64& rng) const {
        return make_h(near_identity(n_, rng), uniform(n_, q_, rng), uniform(p_, n_, rng),
                      uniform(p_, q_, rng));
    }

private:
    void check_h(const H& h) const {
        if (h.block.rows() != n_ + p_ || h.block.cols() != n_ + q_)
            throw DimensionMismatch("H element has shape " + std::to_string(h.block.rows()) + "x" +
                                    std::to_string(h.block.cols()) + ", expected " +
                                    std::to_string(n_ + p_) + "x" + std::to_string(n_ + q_));
    }

    static DenseMatrix uniform(std::size_t r, std::size_t c, std::mt19937_64& rng) {
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        DenseMatrix m(r, c);
        for (double& v : m.entries()) v = dist(rng);
        return m;
    }

    // I + W with ||W||_inf < 1, hence invertible.
    static DenseMatrix near_identity(std::size_t k, std::mt19937_64& rng) {
        const double scale = 0.9 / static_cast<double>(std::max<std::size_t>(k, 1));
        std::uniform_real_distribution<double> dist(-scale, scale);
        DenseMatrix m = identity_matrix(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m(i, j) += dist(rng);
        return m;
    }

    std::size_t n_, p_, q_;
    double tol_;
};

}  // namespace fscan
