#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "fscan/error.hpp"

namespace fscan {

// Ops bundle for a crossed module (feedback tau: H -> G with a G-action on
// H). Products are written diagrammatically: g_mul(a, b) is "a then b".
// The composition and lift paths never call g_inv/h_inv, so monoid-only
// instances (max) may leave them throwing.
template <class XM>
concept CrossedModule = requires(const XM& xm, const typename XM::G& g, const typename XM::H& h) {
    { xm.g_mul(g, g) } -> std::convertible_to<typename XM::G>;
    { xm.g_inv(g) } -> std::convertible_to<typename XM::G>;
    { xm.g_unit() } -> std::convertible_to<typename XM::G>;
    { xm.g_dist(g, g) } -> std::convertible_to<double>;
    { xm.h_mul(h, h) } -> std::convertible_to<typename XM::H>;
    { xm.h_inv(h) } -> std::convertible_to<typename XM::H>;
    { xm.h_unit() } -> std::convertible_to<typename XM::H>;
    { xm.h_dist(h, h) } -> std::convertible_to<double>;
    { xm.feedback(h) } -> std::convertible_to<typename XM::G>;
    { xm.act(g, h) } -> std::convertible_to<typename XM::H>;
    { xm.tolerance() } -> std::convertible_to<double>;
};

// A 2-cell of the crossed-module delooping: four G-valued edges and an
// H-valued face obeying tau(face) . west . north == south . east.
template <CrossedModule XM>
struct TwoCell {
    typename XM::G south, east, north, west;
    typename XM::H face;
};

template <CrossedModule XM>
double boundary_violation(const TwoCell<XM>& cell, const XM& xm) {
    const auto lhs = xm.g_mul(xm.g_mul(xm.feedback(cell.face), cell.west), cell.north);
    const auto rhs = xm.g_mul(cell.south, cell.east);
    return xm.g_dist(lhs, rhs);
}

template <CrossedModule XM>
double two_cell_distance(const TwoCell<XM>& a, const TwoCell<XM>& b, const XM& xm) {
    double d = xm.h_dist(a.face, b.face);
    d = std::max(d, xm.g_dist(a.south, b.south));
    d = std::max(d, xm.g_dist(a.east, b.east));
    d = std::max(d, xm.g_dist(a.north, b.north));
    d = std::max(d, xm.g_dist(a.west, b.west));
    return d;
}

// Vertical identity square on a horizontal 1-cell.
template <CrossedModule XM>
TwoCell<XM> identity_cell_v(const typename XM::G& hcell, const XM& xm) {
    return {hcell, xm.g_unit(), hcell, xm.g_unit(), xm.h_unit()};
}

// Horizontal identity square on a vertical 1-cell.
template <CrossedModule XM>
TwoCell<XM> identity_cell_h(const typename XM::G& vcell, const XM& xm) {
    return {xm.g_unit(), vcell, xm.g_unit(), vcell, xm.h_unit()};
}

// Horizontal composition (a left of b): requires a.east == b.west.
template <CrossedModule XM>
TwoCell<XM> compose_h(const TwoCell<XM>& a, const TwoCell<XM>& b, const XM& xm) {
    if (xm.g_dist(a.east, b.west) > xm.tolerance())
        throw BoundaryMismatch("horizontal composition: east/west edges differ");
    return {xm.g_mul(a.south, b.south), b.east, xm.g_mul(a.north, b.north), a.west,
            xm.h_mul(xm.act(a.south, b.face), a.face)};
}

// Vertical composition (a below b): requires a.north == b.south.
template <CrossedModule XM>
TwoCell<XM> compose_v(const TwoCell<XM>& a, const TwoCell<XM>& b, const XM& xm) {
    if (xm.g_dist(a.north, b.south) > xm.tolerance())
        throw BoundaryMismatch("vertical composition: north/south edges differ");
    return {a.south, xm.g_mul(a.east, b.east), b.north, xm.g_mul(a.west, b.west),
            xm.h_mul(a.face, xm.act(a.west, b.face))};
}

// Interchange violation for a 2x2 constellation: alpha bottom-left, beta
// bottom-right, gamma top-left, delta top-right.
template <CrossedModule XM>
double interchange_violation(const TwoCell<XM>& alpha, const TwoCell<XM>& beta,
                             const TwoCell<XM>& gamma, const TwoCell<XM>& delta, const XM& xm) {
    const auto rows_first = compose_v(compose_h(alpha, beta, xm), compose_h(gamma, delta, xm), xm);
    const auto cols_first = compose_h(compose_v(alpha, gamma, xm), compose_v(beta, delta, xm), xm);
    return two_cell_distance(rows_first, cols_first, xm);
}

template <CrossedModule XM>
bool check_interchange(const TwoCell<XM>& alpha, const TwoCell<XM>& beta,
                       const TwoCell<XM>& gamma, const TwoCell<XM>& delta, const XM& xm,
                       double threshold = 1e-8) {
    return interchange_violation(alpha, beta, gamma, delta, xm) <= threshold;
}

// ---------------------------------------------------------------------------
// Axiom checker.

struct AxiomResult {
    std::string name;
    double max_violation = 0.0;
    std::size_t failures = 0;
};

struct CrossedModuleReport {
    std::vector<AxiomResult> axioms;

    const AxiomResult& operator[](const std::string& name) const {
        for (const auto& a : axioms)
            if (a.name == name) return a;
        throw Error("no axiom named " + name);
    }
    double worst() const {
        double w = 0.0;
        for (const auto& a : axioms) w = std::max(w, a.max_violation);
        return w;
    }
};

// Samples random tuples and reports the largest violation of the crossed
// module axioms: tau and action homomorphism laws, EQUI and PEIF.
template <CrossedModule XM>
CrossedModuleReport check_crossed_module(
    const XM& xm, const std::function<typename XM::G(std::mt19937_64&)>& sample_g,
    const std::function<typename XM::H(std::mt19937_64&)>& sample_h, std::size_t samples,
    std::uint64_t seed, double threshold = 1e-8) {
    std::mt19937_64 rng(seed);
    CrossedModuleReport report;
    report.axioms = {{"TAU_HOM"}, {"ACT_ENDO"}, {"ACT_COMP"}, {"EQUI"}, {"PEIF"}};
    AxiomResult& tau_hom = report.axioms[0];
    AxiomResult& act_endo = report.axioms[1];
    AxiomResult& act_comp = report.axioms[2];
    AxiomResult& equi = report.axioms[3];
    AxiomResult& peif = report.axioms[4];
    auto record = [&](AxiomResult& r, double violation) {
        r.max_violation = std::max(r.max_violation, violation);
        if (violation > threshold) ++r.failures;
    };
    const auto conj_g = [&](const typename XM::G& g, const typename XM::G& x) {
        return xm.g_mul(xm.g_mul(g, x), xm.g_inv(g));
    };
    for (std::size_t t = 0; t < samples; ++t) {
        const auto g1 = sample_g(rng), g2 = sample_g(rng);
        const auto h1 = sample_h(rng), h2 = sample_h(rng);
        record(tau_hom, xm.g_dist(xm.feedback(xm.h_mul(h1, h2)),
                                  xm.g_mul(xm.feedback(h1), xm.feedback(h2))));
        record(act_endo, xm.h_dist(xm.act(g1, xm.h_mul(h1, h2)),
                                   xm.h_mul(xm.act(g1, h1), xm.act(g1, h2))));
        record(act_comp, xm.h_dist(xm.act(xm.g_mul(g1, g2), h1), xm.act(g1, xm.act(g2, h1))));
        record(equi, xm.g_dist(xm.feedback(xm.act(g1, h1)), conj_g(g1, xm.feedback(h1))));
        record(peif, xm.h_dist(xm.act(xm.feedback(h1), h2),
                               xm.h_mul(xm.h_mul(h1, h2), xm.h_inv(h1))));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Boundary-consistent random cells. Edges and the face are sampled freely
// and one remaining edge is solved from the boundary law, so every cell
// returned satisfies it exactly (up to the instance's arithmetic).

// Solves the south edge: south = tau(face) . west . north . east^-1.
template <CrossedModule XM>
TwoCell<XM> random_boundary_cell(const XM& xm,
                                 const std::function<typename XM::G(std::mt19937_64&)>& sample_g,
                                 const std::function<typename XM::H(std::mt19937_64&)>& sample_h,
                                 std::mt19937_64& rng) {
    TwoCell<XM> cell;
    cell.face = sample_h(rng);
    cell.west = sample_g(rng);
    cell.north = sample_g(rng);
    cell.east = sample_g(rng);
    cell.south = xm.g_mul(xm.g_mul(xm.g_mul(xm.feedback(cell.face), cell.west), cell.north),
                          xm.g_inv(cell.east));
    return cell;
}

// Cells composable left-to-right under compose_h; neighbours share their
// east/west edge.
template <CrossedModule XM>
std::vector<TwoCell<XM>> random_h_composable_row(
    const XM& xm, const std::function<typename XM::G(std::mt19937_64&)>& sample_g,
    const std::function<typename XM::H(std::mt19937_64&)>& sample_h, std::mt19937_64& rng,
    std::size_t count) {
    std::vector<TwoCell<XM>> row;
    typename XM::G west = sample_g(rng);
    for (std::size_t k = 0; k < count; ++k) {
        TwoCell<XM> cell;
        cell.face = sample_h(rng);
        cell.west = west;
        cell.north = sample_g(rng);
        cell.east = sample_g(rng);
        cell.south = xm.g_mul(xm.g_mul(xm.g_mul(xm.feedback(cell.face), cell.west), cell.north),
                              xm.g_inv(cell.east));
        west = cell.east;
        row.push_back(std::move(cell));
    }
    return row;
}

// Cells composable bottom-to-top under compose_v; neighbours share their
// north/south edge. Solves the east edge instead.
template <CrossedModule XM>
std::vector<TwoCell<XM>> random_v_composable_column(
    const XM& xm, const std::function<typename XM::G(std::mt19937_64&)>& sample_g,
    const std::function<typename XM::H(std::mt19937_64&)>& sample_h, std::mt19937_64& rng,
    std::size_t count) {
    std::vector<TwoCell<XM>> column;
    typename XM::G south = sample_g(rng);
    for (std::size_t k = 0; k < count; ++k) {
        TwoCell<XM> cell;
        cell.face = sample_h(rng);
        cell.south = south;
        cell.west = sample_g(rng);
        cell.north = sample_g(rng);
        cell.east = xm.g_mul(xm.g_inv(cell.south),
                             xm.g_mul(xm.g_mul(xm.feedback(cell.face), cell.west), cell.north));
        south = cell.north;
        column.push_back(std::move(cell));
    }
    return column;
}

// 2x2 constellation {alpha, beta, gamma, delta} (bottom-left, bottom-right,
// top-left, top-right) with matching shared edges.
template <CrossedModule XM>
std::array<TwoCell<XM>, 4> random_interchange_quad(
    const XM& xm, const std::function<typename XM::G(std::mt19937_64&)>& sample_g,
    const std::function<typename XM::H(std::mt19937_64&)>& sample_h, std::mt19937_64& rng) {
    const auto v = sample_g(rng);   // shared vertical between alpha and beta
    const auto h1 = sample_g(rng);  // shared horizontal between alpha and gamma
    const auto h2 = sample_g(rng);  // shared horizontal between beta and delta
    TwoCell<XM> alpha, beta, gamma, delta;

    alpha.face = sample_h(rng);
    alpha.west = sample_g(rng);
    alpha.north = h1;
    alpha.east = v;
    alpha.south = xm.g_mul(xm.g_mul(xm.g_mul(xm.feedback(alpha.face), alpha.west), alpha.north),
                           xm.g_inv(alpha.east));

    beta.face = sample_h(rng);
    beta.west = v;
    beta.north = h2;
    beta.east = sample_g(rng);
    beta.south = xm.g_mul(xm.g_mul(xm.g_mul(xm.feedback(beta.face), beta.west), beta.north),
                          xm.g_inv(beta.east));

    gamma.face = sample_h(rng);
    gamma.south = h1;
    gamma.west = sample_g(rng);
    gamma.north = sample_g(rng);
    gamma.east = xm.g_mul(xm.g_inv(gamma.south),
                          xm.g_mul(xm.g_mul(xm.feedback(gamma.face), gamma.west), gamma.north));

    delta.face = sample_h(rng);
    delta.south = h2;
    delta.west = gamma.east;
    delta.north = sample_g(rng);
    delta.east = xm.g_mul(xm.g_inv(delta.south),
                          xm.g_mul(xm.g_mul(xm.feedback(delta.face), delta.west), delta.north));
    return {alpha, beta, gamma, delta};
}

// ---------------------------------------------------------------------------
// Abelian delooping: the crossed module A -> 1 of a commutative (semi)group.

struct TrivialGroupElement {
    friend bool operator==(TrivialGroupElement, TrivialGroupElement) { return true; }
};

struct SumGroupOps {
    using Value = double;
    Value unit() const { return 0.0; }
    Value mul(Value a, Value b) const { return a + b; }
    Value inv(Value a) const { return -a; }
    double dist(Value a, Value b) const { return a == b ? 0.0 : std::abs(a - b); }
};

// Commutative monoid only; inv is unavailable and no engine path needs it.
struct MaxMonoidOps {
    using Value = double;
    Value unit() const { return -std::numeric_limits<double>::infinity(); }
    Value mul(Value a, Value b) const { return std::max(a, b); }
    Value inv(Value) const { throw NumericError("max monoid has no inverses"); }
    double dist(Value a, Value b) const { return a == b ? 0.0 : std::abs(a - b); }
};

template <class Op>
struct AbelianCrossedModule {
    using G = TrivialGroupElement;
    using H = typename Op::Value;

    Op op;

    G g_mul(G, G) const { return {}; }
    G g_inv(G) const { return {}; }
    G g_unit() const { return {}; }
    double g_dist(G, G) const { return 0.0; }
    H h_mul(const H& a, const H& b) const { return op.mul(a, b); }
    H h_inv(const H& a) const { return op.inv(a); }
    H h_unit() const { return op.unit(); }
    double h_dist(const H& a, const H& b) const { return op.dist(a, b); }
    G feedback(const H&) const { return {}; }
    H act(G, const H& h) const { return h; }
    double tolerance() const { return 0.0; }
};

using AbelianSumCrossedModule = AbelianCrossedModule<SumGroupOps>;
using AbelianMaxCrossedModule = AbelianCrossedModule<MaxMonoidOps>;

}  // namespace fscan
