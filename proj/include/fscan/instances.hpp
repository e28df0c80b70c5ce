#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fscan/category.hpp"
#include "fscan/error.hpp"
#include "fscan/linalg.hpp"
#include "fscan/tensor.hpp"

namespace fscan {

// ---------------------------------------------------------------------------
// Scalar monoids and their deloopings.

struct SumMonoid {
    using Value = double;
    Value unit() const { return 0.0; }
    Value mul(Value a, Value b) const { return a + b; }
};

struct MaxMonoid {
    using Value = double;
    Value unit() const { return -std::numeric_limits<double>::infinity(); }
    Value mul(Value a, Value b) const { return std::max(a, b); }
};

struct ProductMonoid {
    using Value = double;
    Value unit() const { return 1.0; }
    Value mul(Value a, Value b) const { return a * b; }
};

// Delooping of the matrix group of a fixed size. Diagrammatic order: the
// second step multiplies on the left, so a fold over cells reproduces
// exp(..last..) * ... * exp(..first..) in matrix notation.
struct MatrixMonoid {
    using Value = DenseMatrix;
    std::size_t dim;
    Value unit() const { return identity_matrix(dim); }
    Value mul(const Value& a, const Value& b) const { return mat_mul(b, a); }
};

using SumCategory = Delooping<SumMonoid>;
using MaxCategory = Delooping<MaxMonoid>;
using ProductCategory = Delooping<ProductMonoid>;
using MatrixGroupCategory = Delooping<MatrixMonoid>;
using TensorCategory = Delooping<TensorMonoid>;

namespace detail {

template <class C>
IntervalAssignment<C> delooped_assignment(std::vector<typename C::Morphism> cells,
                                          long long offset = 0) {
    IntervalAssignment<C> asg;
    asg.offset = offset;
    asg.objects.assign(cells.size() + 1, UnitObject{});
    asg.cells = std::move(cells);
    return asg;
}

}  // namespace detail

// cells[k] = x_k in the delooping of (R, +).
inline IntervalAssignment<SumCategory> make_sum_assignment(const std::vector<double>& series,
                                                           long long offset = 0) {
    return detail::delooped_assignment<SumCategory>(series, offset);
}

// cells[k] = x_k in the delooping of (R u {-inf}, max).
inline IntervalAssignment<MaxCategory> make_max_assignment(const std::vector<double>& series,
                                                           long long offset = 0) {
    return detail::delooped_assignment<MaxCategory>(series, offset);
}

// cells[k] = 1 + x_k in the delooping of (R, *): the lift expands to
// 1 + sum over nonempty index subsets of the products of the x's.
inline IntervalAssignment<ProductCategory> make_product_assignment(
    const std::vector<double>& series, long long offset = 0) {
    std::vector<double> cells(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) cells[k] = 1.0 + series[k];
    return detail::delooped_assignment<ProductCategory>(std::move(cells), offset);
}

// ---------------------------------------------------------------------------
// Affine state-space model: cells are per-step matrix exponentials.

struct SSMParams {
    std::vector<DenseMatrix> coefficients;  // d matrices, each e x e

    std::size_t channels() const { return coefficients.size(); }
    std::size_t state_dim() const { return coefficients.empty() ? 0 : coefficients[0].rows(); }

    void validate() const {
        if (coefficients.empty()) throw ValidationError("state-space model needs at least one matrix");
        const std::size_t e = coefficients[0].rows();
        for (const auto& a : coefficients)
            if (!a.square() || a.rows() != e)
                throw DimensionMismatch("state-space matrices must all be square of one size");
    }
};

// cells[k] = exp( sum_j A_j (x_{k+1}^{(j)} - x_k^{(j)}) ). A series of
// fewer than two points yields an empty assignment.
inline IntervalAssignment<MatrixGroupCategory> make_ssm_assignment(
    const std::vector<std::vector<double>>& series, const SSMParams& params,
    long long offset = 0) {
    params.validate();
    const std::size_t d = params.channels();
    const std::size_t e = params.state_dim();
    std::vector<DenseMatrix> cells;
    if (series.size() >= 2) cells.reserve(series.size() - 1);
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        if (series[k].size() != d || series[k + 1].size() != d)
            throw DimensionMismatch("series sample has " + std::to_string(series[k].size()) +
                                    " channels, model expects " + std::to_string(d));
        DenseMatrix gen(e, e);
        for (std::size_t j = 0; j < d; ++j) {
            const double inc = series[k + 1][j] - series[k][j];
            gen = mat_add(gen, mat_scale(inc, params.coefficients[j]));
        }
        cells.push_back(mat_exp(gen));
    }
    auto asg = detail::delooped_assignment<MatrixGroupCategory>(std::move(cells), offset);
    return asg;
}

// ---------------------------------------------------------------------------
// Iterated-sums signature: cells live in the tensor algebra over the
// one-dimensional alphabet, coefficient x_k^n on the single-letter word (n).

inline IntervalAssignment<TensorCategory> make_iss_assignment(const std::vector<double>& series,
                                                              std::uint32_t truncation = 4,
                                                              long long offset = 0) {
    if (truncation < 1) throw ValidationError("iterated-sums truncation must be at least 1");
    std::vector<TensorElement> cells;
    cells.reserve(series.size());
    for (double x : series) {
        TensorElement cell = tensor_unit(truncation, WordDegree::sum_of_letters);
        double power = 1.0;
        for (std::uint32_t n = 1; n <= truncation; ++n) {
            power *= x;
            cell.set(Word{n}, power);
        }
        cells.push_back(std::move(cell));
    }
    return detail::delooped_assignment<TensorCategory>(std::move(cells), offset);
}

// ---------------------------------------------------------------------------
// Iterated-integrals signature: cells are truncated exponentials of the
// increments in the tensor algebra over {1..d}.

inline TensorElement truncated_exponential(const std::vector<double>& increment,
                                           std::uint32_t truncation) {
    if (truncation > 20)
        throw ValidationError("truncation above 20 loses exact integer factorials");
    const std::uint32_t d = static_cast<std::uint32_t>(increment.size());
    TensorElement out = tensor_unit(truncation, WordDegree::length);
    std::uint64_t factorial = 1;
    std::vector<std::pair<Word, double>> level{{Word{}, 1.0}};
    for (std::uint32_t j = 1; j <= truncation; ++j) {
        factorial *= j;
        std::vector<std::pair<Word, double>> next;
        next.reserve(level.size() * d);
        for (const auto& [w, prod] : level) {
            for (std::uint32_t letter = 1; letter <= d; ++letter) {
                Word extended = w;
                extended.push_back(letter);
                next.emplace_back(std::move(extended), prod * increment[letter - 1]);
            }
        }
        for (const auto& [w, prod] : next) out.set(w, prod / static_cast<double>(factorial));
        level = std::move(next);
    }
    return out;
}

inline IntervalAssignment<TensorCategory> make_iis_assignment(
    const std::vector<std::vector<double>>& series, std::uint32_t truncation = 4,
    long long offset = 0) {
    if (truncation < 1) throw ValidationError("iterated-integrals truncation must be at least 1");
    std::vector<TensorElement> cells;
    if (series.size() >= 2) cells.reserve(series.size() - 1);
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        if (series[k].size() != series[k + 1].size())
            throw DimensionMismatch("series samples disagree on dimension");
        std::vector<double> inc(series[k].size());
        for (std::size_t j = 0; j < inc.size(); ++j) inc[j] = series[k + 1][j] - series[k][j];
        cells.push_back(truncated_exponential(inc, truncation));
    }
    return detail::delooped_assignment<TensorCategory>(std::move(cells), offset);
}

// ---------------------------------------------------------------------------
// Matrix-category assignment: objects are dimensions n_i, the cell over
// [i, i+1] is an embedding of x_i into S^{n_{i+1} x n_i}.

struct DimProfile {
    std::vector<std::size_t> dims;
    std::function<DenseMatrix(std::size_t rows, std::size_t cols, double x)> embed;

    std::size_t dim_at(std::size_t i) const { return dims.size() == 1 ? dims[0] : dims[i]; }
};

// Profile whose embeddings scale a stored template per shape: in the real
// semiring phi(x) = x * E, in the tropical semiring x is added entrywise.
template <Semiring SR>
DimProfile scaled_template_profile(std::vector<std::size_t> dims,
                                   std::map<std::pair<std::size_t, std::size_t>, DenseMatrix>
                                       templates,
                                   SR sr) {
    return DimProfile{
        std::move(dims),
        [templates = std::move(templates), sr](std::size_t rows, std::size_t cols,
                                               double x) -> DenseMatrix {
            const auto it = templates.find({rows, cols});
            if (it == templates.end())
                throw ValidationError("no embedding template for shape " + std::to_string(rows) +
                                      "x" + std::to_string(cols));
            DenseMatrix out = it->second;
            for (double& v : out.entries()) v = sr.mul(x, v);
            return out;
        }};
}

template <Semiring SR>
IntervalAssignment<MatCategory<SR>> make_mat_assignment(const std::vector<double>& series,
                                                        const DimProfile& profile,
                                                        [[maybe_unused]] const SR& sr,
                                                        long long offset = 0) {
    if (profile.dims.empty()) throw ValidationError("dimension profile is empty");
    if (profile.dims.size() != 1 && profile.dims.size() != series.size() + 1)
        throw DimensionMismatch(profile.dims.size(), series.size() + 1);
    IntervalAssignment<MatCategory<SR>> asg;
    asg.offset = offset;
    asg.objects.resize(series.size() + 1);
    for (std::size_t i = 0; i <= series.size(); ++i) asg.objects[i] = profile.dim_at(i);
    asg.cells.reserve(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) {
        DenseMatrix cell = profile.embed(profile.dim_at(k + 1), profile.dim_at(k), series[k]);
        if (cell.rows() != profile.dim_at(k + 1) || cell.cols() != profile.dim_at(k))
            throw DimensionMismatch("embedding produced shape " + std::to_string(cell.rows()) +
                                    "x" + std::to_string(cell.cols()) + " at cell " +
                                    std::to_string(k));
        asg.cells.push_back(std::move(cell));
    }
    return asg;
}

}  // namespace fscan
