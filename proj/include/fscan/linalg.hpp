#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fscan/error.hpp"
#include "fscan/matrix.hpp"

namespace fscan {

namespace detail {

struct LuFactors {
    DenseMatrix lu;                 // packed L (unit diagonal) and U
    std::vector<std::size_t> perm;  // row permutation
};

// Partial-pivot LU. Pivots below 1e-12 * max|entry| are treated as singular.
inline LuFactors lu_factor(const DenseMatrix& a) {
    if (!a.square()) throw NonSquare();
    const std::size_t n = a.rows();
    const double threshold = 1e-12 * max_abs(a);
    LuFactors f{a, std::vector<std::size_t>(n)};
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    DenseMatrix& m = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(m(i, k)) > best) {
                best = std::abs(m(i, k));
                pivot = i;
            }
        }
        if (best <= threshold)
            throw Singular("pivot " + std::to_string(best) + " below threshold at column " +
                           std::to_string(k));
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
            std::swap(f.perm[k], f.perm[pivot]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            m(i, k) /= m(k, k);
            const double lik = m(i, k);
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= lik * m(k, j);
        }
    }
    return f;
}

inline DenseMatrix lu_solve(const LuFactors& f, const DenseMatrix& rhs) {
    const std::size_t n = f.lu.rows();
    if (rhs.rows() != n) throw DimensionMismatch(rhs.rows(), n);
    DenseMatrix x(n, rhs.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rhs.cols(); ++j) x(i, j) = rhs(f.perm[i], j);
    // forward substitution (unit lower)
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k) {
            const double lik = f.lu(i, k);
            if (lik == 0.0) continue;
            for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= lik * x(k, j);
        }
    // back substitution
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k) {
            const double uik = f.lu(ii, k);
            if (uik == 0.0) continue;
            for (std::size_t j = 0; j < x.cols(); ++j) x(ii, j) -= uik * x(k, j);
        }
        const double d = f.lu(ii, ii);
        for (std::size_t j = 0; j < x.cols(); ++j) x(ii, j) /= d;
    }
    return x;
}

}  // namespace detail

// Solves a x = rhs for square real a.
inline DenseMatrix lu_solve(const DenseMatrix& a, const DenseMatrix& rhs) {
    return detail::lu_solve(detail::lu_factor(a), rhs);
}

inline DenseMatrix mat_inv(const DenseMatrix& a) {
    if (!a.square()) throw NonSquare();
    return lu_solve(a, identity_matrix(a.rows()));
}

namespace detail {

inline double one_norm(const DenseMatrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

// Pade numerator/denominator pair for exp; b holds the coefficients.
inline void exp_pade_uv(const DenseMatrix& a, const std::vector<double>& b, DenseMatrix& u,
                        DenseMatrix& v) {
    const std::size_t n = a.rows();
    const DenseMatrix id = identity_matrix(n);
    const DenseMatrix a2 = mat_mul(a, a);
    std::vector<DenseMatrix> even{id, a2};  // A^0, A^2, A^4, ...
    const std::size_t degree = b.size() - 1;
    for (std::size_t k = 2; 2 * k <= degree; ++k) even.push_back(mat_mul(even.back(), a2));
    DenseMatrix podd(n, n), peven(n, n);
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (k % 2 == 1)
            podd = mat_add(podd, mat_scale(b[k], even[k / 2]));
        else
            peven = mat_add(peven, mat_scale(b[k], even[k / 2]));
    }
    u = mat_mul(a, podd);
    v = peven;
}

// Pade-13 with the factored A^6 grouping; cheaper than forming A^12.
inline void exp_pade13_uv(const DenseMatrix& a, DenseMatrix& u, DenseMatrix& v) {
    static const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                               1187353796428800.,  129060195264000.,   10559470521600.,
                               670442572800.,      33522128640.,       1323241920.,
                               40840800.,          960960.,            16380.,
                               182.,               1.};
    const std::size_t n = a.rows();
    const DenseMatrix id = identity_matrix(n);
    const DenseMatrix a2 = mat_mul(a, a);
    const DenseMatrix a4 = mat_mul(a2, a2);
    const DenseMatrix a6 = mat_mul(a4, a2);
    DenseMatrix w = mat_add(mat_scale(b[13], a6), mat_add(mat_scale(b[11], a4), mat_scale(b[9], a2)));
    w = mat_add(mat_mul(a6, w),
                mat_add(mat_scale(b[7], a6),
                        mat_add(mat_scale(b[5], a4),
                                mat_add(mat_scale(b[3], a2), mat_scale(b[1], id)))));
    u = mat_mul(a, w);
    DenseMatrix z = mat_add(mat_scale(b[12], a6), mat_add(mat_scale(b[10], a4), mat_scale(b[8], a2)));
    v = mat_add(mat_mul(a6, z),
                mat_add(mat_scale(b[6], a6),
                        mat_add(mat_scale(b[4], a4),
                                mat_add(mat_scale(b[2], a2), mat_scale(b[0], id)))));
}

}  // namespace detail

// Matrix exponential by scaling and squaring with Pade approximants,
// order selected from the 1-norm (Higham's thresholds).
inline DenseMatrix mat_exp(const DenseMatrix& a) {
    if (!a.square()) throw NonSquare("mat_exp requires a square matrix");
    if (!a.all_finite()) throw NonFinite("mat_exp requires finite entries");
    const std::size_t n = a.rows();
    if (n == 0) return a;

    const double norm = detail::one_norm(a);
    DenseMatrix u, v;
    int squarings = 0;
    if (norm < 1.495585217958292e-2) {
        detail::exp_pade_uv(a, {120., 60., 12., 1.}, u, v);
    } else if (norm < 2.539398330063230e-1) {
        detail::exp_pade_uv(a, {30240., 15120., 3360., 420., 30., 1.}, u, v);
    } else if (norm < 9.504178996162932e-1) {
        detail::exp_pade_uv(a, {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.}, u,
                            v);
    } else if (norm < 2.097847961257068) {
        detail::exp_pade_uv(a,
                            {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                             2162160., 110880., 3960., 90., 1.},
                            u, v);
    } else {
        const double theta13 = 5.371920351148152;
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
        detail::exp_pade13_uv(mat_scale(std::ldexp(1.0, -squarings), a), u, v);
    }
    DenseMatrix r = lu_solve(mat_sub(v, u), mat_add(v, u));
    for (int s = 0; s < squarings; ++s) r = mat_mul(r, r);
    return r;
}

}  // namespace fscan
