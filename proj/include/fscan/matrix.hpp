#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "fscan/error.hpp"
#include "fscan/semiring.hpp"

namespace fscan {

// Dense row-major matrix of doubles. Scalar semantics (real vs tropical)
// are supplied per operation through a Semiring.
class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw DimensionMismatch("entry count " + std::to_string(data_.size()) +
                                    " does not match shape " + std::to_string(rows_) +
                                    "x" + std::to_string(cols_));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const double& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& entries() const { return data_; }
    std::vector<double>& entries() { return data_; }

    DenseMatrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
        DenseMatrix out(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) out(i, j) = (*this)(i0 + i, j0 + j);
        return out;
    }

    void set_block(std::size_t i0, std::size_t j0, const DenseMatrix& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

template <Semiring SR>
DenseMatrix identity_matrix(std::size_t n, const SR& sr) {
    DenseMatrix m(n, n, sr.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = sr.one();
    return m;
}

inline DenseMatrix identity_matrix(std::size_t n) { return identity_matrix(n, RealSemiring{}); }

template <Semiring SR>
DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b, const SR& sr) {
    if (a.cols() != b.rows()) throw DimensionMismatch(a.cols(), b.rows());
    DenseMatrix out(a.rows(), b.cols(), sr.zero());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) = sr.add(out(i, j), sr.mul(aik, b(k, j)));
        }
    }
    return out;
}

inline DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) {
    return mat_mul(a, b, RealSemiring{});
}

inline DenseMatrix mat_add(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("mat_add shape mismatch");
    DenseMatrix out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.entries()[i] += b.entries()[i];
    return out;
}

inline DenseMatrix mat_sub(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("mat_sub shape mismatch");
    DenseMatrix out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.entries()[i] -= b.entries()[i];
    return out;
}

inline DenseMatrix mat_scale(double s, const DenseMatrix& a) {
    DenseMatrix out = a;
    for (double& v : out.entries()) v *= s;
    return out;
}

// Largest absolute entry difference; shapes must match.
inline double mat_distance(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("mat_distance shape mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a.entries()[i], y = b.entries()[i];
        if (x == y) continue;  // covers shared infinities
        d = std::max(d, std::abs(x - y));
    }
    return d;
}

inline double max_abs(const DenseMatrix& a) {
    double m = 0.0;
    for (double v : a.entries()) m = std::max(m, std::abs(v));
    return m;
}

// Default float comparison: relative 1e-9 with absolute floor 1e-12.
inline bool approx_equal(double a, double b, double rel = 1e-9, double abs_floor = 1e-12) {
    if (a == b) return true;
    const double diff = std::abs(a - b);
    const double scale = std::max(std::abs(a), std::abs(b));
    return diff <= std::max(abs_floor, rel * scale);
}

inline bool approx_equal(const DenseMatrix& a, const DenseMatrix& b, double rel = 1e-9,
                         double abs_floor = 1e-12) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!approx_equal(a.entries()[i], b.entries()[i], rel, abs_floor)) return false;
    return true;
}

}  // namespace fscan
