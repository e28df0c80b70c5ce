#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "fscan/error.hpp"

namespace fscan {

// A word over positive-integer letters. For the iterated-sums alphabet the
// letter n stands for the symbol [1^n] and contributes n to the degree;
// for the iterated-integrals alphabet {1..d} every letter contributes 1.
using Word = std::vector<std::uint32_t>;

enum class WordDegree : std::uint8_t {
    sum_of_letters,  // iterated-sums convention
    length,          // iterated-integrals convention
};

inline std::uint64_t word_degree(const Word& w, WordDegree rule) {
    if (rule == WordDegree::length) return w.size();
    return std::accumulate(w.begin(), w.end(), std::uint64_t{0});
}

// Element of the tensor algebra truncated at total degree L, stored as a
// sparse coefficient map. Missing words have coefficient zero.
struct TensorElement {
    std::uint32_t truncation = 0;
    WordDegree degree_rule = WordDegree::sum_of_letters;
    std::map<Word, double> terms;

    double coefficient(const Word& w) const {
        const auto it = terms.find(w);
        return it == terms.end() ? 0.0 : it->second;
    }

    void set(const Word& w, double c) {
        if (c == 0.0)
            terms.erase(w);
        else
            terms[w] = c;
    }
};

inline TensorElement tensor_unit(std::uint32_t truncation, WordDegree rule) {
    TensorElement e{truncation, rule, {}};
    e.terms[Word{}] = 1.0;
    return e;
}

// Concatenation product, dropping words above the truncation degree.
inline TensorElement tensor_mul(const TensorElement& u, const TensorElement& v) {
    if (u.truncation != v.truncation || u.degree_rule != v.degree_rule)
        throw AlphabetMismatch("tensor_mul operands disagree on truncation or alphabet");
    TensorElement out{u.truncation, u.degree_rule, {}};
    for (const auto& [w1, c1] : u.terms) {
        const std::uint64_t d1 = word_degree(w1, u.degree_rule);
        for (const auto& [w2, c2] : v.terms) {
            if (d1 + word_degree(w2, u.degree_rule) > u.truncation) continue;
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            const double c = out.coefficient(w) + c1 * c2;
            out.set(w, c);
        }
    }
    return out;
}

// Largest absolute coefficient difference across the union of stored words.
inline double tensor_distance(const TensorElement& a, const TensorElement& b) {
    double d = 0.0;
    for (const auto& [w, c] : a.terms) d = std::max(d, std::abs(c - b.coefficient(w)));
    for (const auto& [w, c] : b.terms) d = std::max(d, std::abs(c - a.coefficient(w)));
    return d;
}

// Monoid ops bundle for the delooping of the truncated tensor algebra.
struct TensorMonoid {
    using Value = TensorElement;
    std::uint32_t truncation;
    WordDegree degree_rule;

    Value unit() const { return tensor_unit(truncation, degree_rule); }
    Value mul(const Value& a, const Value& b) const { return tensor_mul(a, b); }
};

}  // namespace fscan
