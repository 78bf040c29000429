#include "doctest.h"
#include "test_support.hpp"

#include "fewnomial/lattice.hpp"

#include <random>

using namespace fewnomial;
using fewnomial::testing::random_mixed_structure;
using fewnomial::testing::worked_example;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m.at(static_cast<int>(r), static_cast<int>(c)) = static_cast<long>(rows[r][c]);
    return m;
}

bool is_unimodular(const IntMatrix& u) {
    if (u.rows() != u.cols())
        return false;
    for (const Integer& d : smith_normal_form(u))
        if (d != 1)
            return false;
    return smith_normal_form(u).size() == static_cast<std::size_t>(u.rows());
}

IntMatrix random_unimodular(int n, std::mt19937_64& rng) {
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_int_distribution<long> mult(-3, 3);
    for (int step = 0; step < 12; ++step) {
        int a = pick(rng), b = pick(rng);
        if (a != b)
            u.add_row_multiple(a, b, Integer(mult(rng)));
        if (step % 5 == 0)
            u.negate_row(pick(rng));
    }
    return u;
}

}  // namespace

TEST_CASE("hermite_normal_form factorization H = U A") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> entry(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        int rows = 2 + static_cast<int>(trial % 4);
        int cols = 2 + static_cast<int>(trial % 3);
        IntMatrix a(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                a.at(r, c) = entry(rng);
        auto [h, u] = hermite_normal_form(a);
        CHECK(u * a == h);
        CHECK(is_unimodular(u));
        // echelon shape: pivots strictly move right, entries above reduced
        int last_pivot = -1;
        for (int r = 0; r < rows; ++r) {
            int c = 0;
            while (c < cols && h.at(r, c) == 0)
                ++c;
            if (c == cols)
                continue;  // zero rows trail
            CHECK(c > last_pivot);
            CHECK(h.at(r, c) > 0);
            for (int rr = 0; rr < r; ++rr) {
                CHECK(h.at(rr, c) >= 0);
                CHECK(h.at(rr, c) < h.at(r, c));
            }
            last_pivot = c;
        }
    }
}

TEST_CASE("smith_normal_form divisors") {
    CHECK(smith_normal_form(from_rows({{2, 4}, {4, 2}})) == std::vector<Integer>{2, 6});
    CHECK(smith_normal_form(from_rows({{1, 0}, {0, 1}})) == std::vector<Integer>{1, 1});
    CHECK(smith_normal_form(from_rows({{6, 0}, {0, 10}})) == std::vector<Integer>{2, 30});
    CHECK(smith_normal_form(from_rows({{2, 0}, {4, 0}})) == std::vector<Integer>{2});
}

TEST_CASE("exponent matrix of the two-trinomial example") {
    MixedStructure ms = detect_mixed_structure(worked_example());
    ExponentMatrix w = exponent_matrix(ms);
    REQUIRE(w.rows.rows() == 4);
    REQUIRE(w.rows.cols() == 2);
    CHECK(w.row_labels == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(w.rows == from_rows({{2, 0}, {0, 1}, {0, 2}, {1, 0}}));
}

TEST_CASE("kernel basis annihilates W and is saturated") {
    MixedStructure ms = detect_mixed_structure(worked_example());
    ExponentMatrix w = exponent_matrix(ms);
    RelationBasis rb = kernel_basis(w);
    REQUIRE(rb.alphas.rows() == 2);
    REQUIRE(rb.alphas.cols() == 4);
    IntMatrix prod = rb.alphas * w.rows;
    for (int r = 0; r < prod.rows(); ++r)
        for (int c = 0; c < prod.cols(); ++c)
            CHECK(prod.at(r, c) == 0);
    // saturation: elementary divisors of the basis are all 1
    for (const Integer& d : smith_normal_form(rb.alphas))
        CHECK(d == 1);
    // same lattice as the hand relation basis {(1,0,0,-2), (0,2,-1,0)}
    CHECK(lattice_canonical_form(rb.alphas) ==
          lattice_canonical_form(from_rows({{1, 0, 0, -2}, {0, 2, -1, 0}})));
}

TEST_CASE("kernel basis on random mixed systems") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> blocks = (trial % 3 == 0) ? std::vector<int>{2, 1}
                                                   : std::vector<int>{1, 1};
        MixedStructure ms = random_mixed_structure(blocks, rng);
        ExponentMatrix w = exponent_matrix(ms);
        RelationBasis rb = kernel_basis(w);
        CHECK(rb.alphas.rows() == ms.l);
        IntMatrix prod = rb.alphas * w.rows;
        for (int r = 0; r < prod.rows(); ++r)
            for (int c = 0; c < prod.cols(); ++c)
                CHECK(prod.at(r, c) == 0);
        for (const Integer& d : smith_normal_form(rb.alphas))
            CHECK(d == 1);
    }
}

TEST_CASE("kernel basis requires full rank") {
    MixedStructure ms = detect_mixed_structure(worked_example());
    // collapse every exponent onto the x-axis
    ms.lead_exponents = {{2, 0}, {4, 0}};
    ms.body_exponents = {{{1, 0}}, {{3, 0}}};
    CHECK_THROWS_WITH_AS(kernel_basis(exponent_matrix(ms)), doctest::Contains("rank"), Error);
}

TEST_CASE("lattice index and parity") {
    MixedStructure ms = detect_mixed_structure(worked_example());
    ExponentMatrix w = exponent_matrix(ms);
    CHECK(lattice_index(w) == 1);
    CHECK(odd_index_check(w));

    // all exponents even: index 4
    MixedStructure even = ms;
    even.lead_exponents = {{2, 0}, {0, 2}};
    even.body_exponents = {{{2, 2}}, {{4, 0}}};
    ExponentMatrix we = exponent_matrix(even);
    CHECK(lattice_index(we) == 4);
    CHECK_FALSE(odd_index_check(we));
}

TEST_CASE("lattice canonical form is invariant under unimodular change of basis") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> entry(-7, 7);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix basis(3, 4);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 4; ++c)
                basis.at(r, c) = entry(rng);
        IntMatrix u = random_unimodular(3, rng);
        CHECK(lattice_canonical_form(basis) == lattice_canonical_form(u * basis));
    }
}

TEST_CASE("integer_rank") {
    CHECK(integer_rank(from_rows({{1, 2}, {2, 4}})) == 1);
    CHECK(integer_rank(from_rows({{1, 2}, {3, 4}})) == 2);
    CHECK(integer_rank(from_rows({{0, 0}, {0, 0}})) == 0);
    CHECK(integer_rank(from_rows({{2, 0}, {0, 1}, {0, 2}, {1, 0}})) == 2);
}
