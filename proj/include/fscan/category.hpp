#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fscan/error.hpp"
#include "fscan/matrix.hpp"
#include "fscan/semiring.hpp"

namespace fscan {

// Ops bundle for a category with typed composition. Composition is
// diagrammatic: compose(f, g) is "f then g" and requires target(f) ==
// source(g). Implementations must be pure; the scan engine calls compose
// from many threads.
template <class C>
concept Category = requires(const C& cat, const typename C::Object& obj,
                            const typename C::Morphism& f, const typename C::Morphism& g) {
    { cat.source(f) } -> std::convertible_to<typename C::Object>;
    { cat.target(f) } -> std::convertible_to<typename C::Object>;
    { cat.identity(obj) } -> std::convertible_to<typename C::Morphism>;
    { cat.compose(f, g) } -> std::convertible_to<typename C::Morphism>;
    { cat.objects_equal(obj, obj) } -> std::convertible_to<bool>;
};

// Integer-endpoint interval [lo, hi], lo <= hi.
struct Interval {
    long long lo = 0;
    long long hi = 0;
    long long length() const { return hi - lo; }
};

// One morphism per elementary interval [offset+k, offset+k+1], plus the
// object at every grid point. objects.size() == cells.size() + 1.
template <Category C>
struct IntervalAssignment {
    long long offset = 0;
    std::vector<typename C::Object> objects;
    std::vector<typename C::Morphism> cells;

    long long lo() const { return offset; }
    long long hi() const { return offset + static_cast<long long>(cells.size()); }
};

// Indices of cells whose endpoints disagree with the object sequence.
// Empty result means the assignment is a valid quiver map.
template <Category C>
std::vector<std::size_t> validate_assignment(const IntervalAssignment<C>& asg, const C& cat) {
    std::vector<std::size_t> bad;
    for (std::size_t k = 0; k < asg.cells.size(); ++k) {
        if (!cat.objects_equal(cat.source(asg.cells[k]), asg.objects[k]) ||
            !cat.objects_equal(cat.target(asg.cells[k]), asg.objects[k + 1]))
            bad.push_back(k);
    }
    return bad;
}

namespace detail {

template <Category C>
void require_in_range(const IntervalAssignment<C>& asg, const Interval& iv) {
    if (iv.lo > iv.hi)
        throw OutOfRange("interval [" + std::to_string(iv.lo) + "," + std::to_string(iv.hi) +
                         "] is empty-reversed");
    if (iv.lo < asg.lo() || iv.hi > asg.hi())
        throw OutOfRange("interval [" + std::to_string(iv.lo) + "," + std::to_string(iv.hi) +
                         "] outside assignment range [" + std::to_string(asg.lo()) + "," +
                         std::to_string(asg.hi()) + "]");
}

}  // namespace detail

// The unique functor value on [iv.lo, iv.hi]: left-to-right fold of the
// elementary cells, identity at the start object for point intervals.
template <Category C>
typename C::Morphism lift(const IntervalAssignment<C>& asg, const Interval& iv, const C& cat) {
    detail::require_in_range(asg, iv);
    const std::size_t first = static_cast<std::size_t>(iv.lo - asg.offset);
    const std::size_t last = static_cast<std::size_t>(iv.hi - asg.offset);
    if (first == last) return cat.identity(asg.objects[first]);
    typename C::Morphism acc = asg.cells[first];
    for (std::size_t k = first + 1; k < last; ++k) {
        if (!cat.objects_equal(cat.target(acc), cat.source(asg.cells[k])))
            throw EndpointMismatch(k);
        acc = cat.compose(acc, asg.cells[k]);
    }
    return acc;
}

// Checks F([lo,hi]) == F([lo,s1]) . F([s1,s2]) . ... . F([sk,hi]) for the
// given split points, using the caller's morphism equality.
template <Category C, class MorphismEq>
bool functor_law_check(const IntervalAssignment<C>& asg, const Interval& iv,
                       const std::vector<long long>& splits, const C& cat, MorphismEq&& eq) {
    detail::require_in_range(asg, iv);
    for (std::size_t i = 0; i < splits.size(); ++i) {
        if (splits[i] < iv.lo || splits[i] > iv.hi || (i > 0 && splits[i] < splits[i - 1]))
            throw OutOfRange("split point " + std::to_string(splits[i]) + " not sorted inside [" +
                             std::to_string(iv.lo) + "," + std::to_string(iv.hi) + "]");
    }
    long long prev = iv.lo;
    bool have = false;
    typename C::Morphism acc = cat.identity(asg.objects[static_cast<std::size_t>(iv.lo - asg.offset)]);
    auto extend = [&](long long to) {
        const auto piece = lift(asg, Interval{prev, to}, cat);
        acc = have ? cat.compose(acc, piece) : piece;
        have = true;
        prev = to;
    };
    for (long long s : splits) extend(s);
    extend(iv.hi);
    return eq(acc, lift(asg, iv, cat));
}

// ---------------------------------------------------------------------------
// Deloopings: a monoid as a one-object category.

struct UnitObject {
    friend bool operator==(UnitObject, UnitObject) { return true; }
};

// M needs: Value, unit() and mul(a, b) (diagrammatic: a then b).
template <class M>
struct Delooping {
    using Object = UnitObject;
    using Morphism = typename M::Value;

    M monoid;

    Object source(const Morphism&) const { return {}; }
    Object target(const Morphism&) const { return {}; }
    Morphism identity(Object) const { return monoid.unit(); }
    Morphism compose(const Morphism& f, const Morphism& g) const { return monoid.mul(f, g); }
    bool objects_equal(Object, Object) const { return true; }
};

// ---------------------------------------------------------------------------
// The category of matrices over a semiring: objects are dimensions, a
// morphism m -> n is an n x m matrix. Diagrammatic composition multiplies
// the second factor on the left, so F([i,j]) has shape dims[j] x dims[i].

template <Semiring SR>
struct MatCategory {
    using Object = std::size_t;
    using Morphism = DenseMatrix;

    SR sr;

    Object source(const Morphism& m) const { return m.cols(); }
    Object target(const Morphism& m) const { return m.rows(); }
    Morphism identity(Object d) const { return identity_matrix(d, sr); }
    Morphism compose(const Morphism& f, const Morphism& g) const { return mat_mul(g, f, sr); }
    bool objects_equal(Object a, Object b) const { return a == b; }
};

}  // namespace fscan
