#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fscan/tensor.hpp"

using namespace fscan;

namespace {

TensorElement random_element(std::mt19937_64& rng, std::uint32_t L, WordDegree rule,
                             std::uint32_t max_letter) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::uniform_int_distribution<std::uint32_t> letter(1, max_letter);
    TensorElement e{L, rule, {}};
    e.set(Word{}, dist(rng));
    for (int t = 0; t < 12; ++t) {
        Word w;
        while (true) {
            Word cand = w;
            cand.push_back(letter(rng));
            if (word_degree(cand, rule) > L) break;
            w = cand;
            if (letter(rng) % 2 == 0) break;
        }
        if (!w.empty()) e.set(w, dist(rng));
    }
    return e;
}

}  // namespace

TEST_CASE("tensor unit is a two-sided unit") {
    std::mt19937_64 rng(21);
    const auto u = random_element(rng, 4, WordDegree::sum_of_letters, 4);
    const auto one = tensor_unit(4, WordDegree::sum_of_letters);
    CHECK(tensor_distance(tensor_mul(u, one), u) == 0.0);
    CHECK(tensor_distance(tensor_mul(one, u), u) == 0.0);
}

TEST_CASE("single-letter concatenation") {
    TensorElement u{3, WordDegree::sum_of_letters, {}};
    TensorElement v{3, WordDegree::sum_of_letters, {}};
    u.set(Word{1}, 2.5);
    v.set(Word{1}, -4.0);
    const auto p = tensor_mul(u, v);
    CHECK(p.coefficient(Word{1, 1}) == 2.5 * -4.0);
    CHECK(p.coefficient(Word{1}) == 0.0);
}

TEST_CASE("tensor_mul is associative") {
    std::mt19937_64 rng(22);
    for (auto rule : {WordDegree::sum_of_letters, WordDegree::length}) {
        for (int t = 0; t < 20; ++t) {
            const auto a = random_element(rng, 4, rule, 3);
            const auto b = random_element(rng, 4, rule, 3);
            const auto c = random_element(rng, 4, rule, 3);
            const auto lhs = tensor_mul(tensor_mul(a, b), c);
            const auto rhs = tensor_mul(a, tensor_mul(b, c));
            CHECK(tensor_distance(lhs, rhs) < 1e-12);
        }
    }
}

TEST_CASE("words above the truncation degree are dropped") {
    TensorElement u{2, WordDegree::sum_of_letters, {}};
    u.set(Word{2}, 1.0);
    u.set(Word{1}, 1.0);
    const auto p = tensor_mul(u, u);
    CHECK(p.coefficient(Word{1, 1}) == 1.0);
    CHECK(p.coefficient(Word{2, 2}) == 0.0);
    CHECK(p.coefficient(Word{1, 2}) == 0.0);
    for (const auto& [w, c] : p.terms) CHECK(word_degree(w, p.degree_rule) <= 2);
}

TEST_CASE("mismatched operands are rejected") {
    const auto a = tensor_unit(3, WordDegree::sum_of_letters);
    const auto b = tensor_unit(4, WordDegree::sum_of_letters);
    const auto c = tensor_unit(3, WordDegree::length);
    CHECK_THROWS_AS(tensor_mul(a, b), AlphabetMismatch);
    CHECK_THROWS_AS(tensor_mul(a, c), AlphabetMismatch);
}

TEST_CASE("word degree follows the alphabet convention") {
    CHECK(word_degree(Word{3, 1}, WordDegree::sum_of_letters) == 4);
    CHECK(word_degree(Word{3, 1}, WordDegree::length) == 2);
}
