#include "doctest.h"

#include "fewnomial/blocked_poly.hpp"

#include <random>

using namespace fewnomial;

namespace {

BlockedPolynomial random_poly(const std::vector<int>& blocks, std::mt19937_64& rng, int max_deg = 2) {
    int nvars = 0;
    for (int b : blocks)
        nvars += b;
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> nterms(1, 4);
    BlockedPolynomial p(blocks);
    int t = nterms(rng);
    for (int s = 0; s < t; ++s) {
        std::vector<int> e(static_cast<std::size_t>(nvars));
        for (int v = 0; v < nvars; ++v)
            e[v] = deg(rng);
        int c = coeff(rng);
        if (c != 0)
            p.add_term(e, Rational(c));
    }
    return p;
}

}  // namespace

TEST_CASE("ring axioms on sampled polynomials") {
    std::mt19937_64 rng(3);
    std::vector<int> blocks{2, 1};
    for (int trial = 0; trial < 40; ++trial) {
        BlockedPolynomial a = random_poly(blocks, rng);
        BlockedPolynomial b = random_poly(blocks, rng);
        BlockedPolynomial c = random_poly(blocks, rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a - a == BlockedPolynomial(blocks));
        CHECK(-(-a) == a);
    }
}

TEST_CASE("q polynomials and constructors") {
    std::vector<int> blocks{2, 1};
    BlockedPolynomial q0 = BlockedPolynomial::q_polynomial(blocks, 0);
    CHECK(q0.terms().size() == 3);  // 1 + z11 + z12
    CHECK(q0.terms().at({0, 0, 0}) == Rational(1));
    CHECK(q0.terms().at({1, 0, 0}) == Rational(1));
    CHECK(q0.terms().at({0, 1, 0}) == Rational(1));
    BlockedPolynomial q1 = BlockedPolynomial::q_polynomial(blocks, 1);
    CHECK(q1.terms().size() == 2);

    CHECK(BlockedPolynomial::constant(blocks, Rational(0)).is_zero());
    BlockedPolynomial v = BlockedPolynomial::variable(blocks, 2);
    CHECK(v.terms().at({0, 0, 1}) == Rational(1));
}

TEST_CASE("derivative and multiplication by a variable") {
    std::vector<int> blocks{1, 1};
    BlockedPolynomial q0 = BlockedPolynomial::q_polynomial(blocks, 0);
    BlockedPolynomial p = q0 * q0;  // (1 + z)^2
    BlockedPolynomial dp = p.derivative(0);
    CHECK(dp == BlockedPolynomial::constant(blocks, Rational(2)) +
                    BlockedPolynomial::variable(blocks, 0) * Rational(2));
    CHECK(p.derivative(1).is_zero());
    CHECK(p.times_variable(1).multidegree() == std::vector<int>{2, 1});
    // product rule on samples
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        BlockedPolynomial a = random_poly(blocks, rng);
        BlockedPolynomial b = random_poly(blocks, rng);
        CHECK((a * b).derivative(0) == a.derivative(0) * b + a * b.derivative(0));
    }
}

TEST_CASE("multidegree is per block") {
    std::vector<int> blocks{2, 1};
    BlockedPolynomial p(blocks);
    p.add_term({1, 2, 0}, Rational(1));   // block degrees (3, 0)
    p.add_term({0, 0, 2}, Rational(-5));  // block degrees (0, 2)
    CHECK(p.multidegree() == std::vector<int>{3, 2});
    CHECK(BlockedPolynomial(blocks).multidegree() == std::vector<int>{-1, -1});
}

TEST_CASE("exact division") {
    std::vector<int> blocks{1, 1};
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        BlockedPolynomial a = random_poly(blocks, rng);
        BlockedPolynomial b = random_poly(blocks, rng);
        if (b.is_zero())
            continue;
        CHECK((a * b).exact_divide(b) == a);
    }
    BlockedPolynomial q = BlockedPolynomial::q_polynomial(blocks, 0);
    BlockedPolynomial one = BlockedPolynomial::constant(blocks, Rational(1));
    CHECK_THROWS_WITH_AS((q + one).exact_divide(q), doctest::Contains("remainder"), Error);
}

TEST_CASE("determinants: cofactor and Bareiss agree") {
    std::vector<int> blocks{1, 1, 1};
    std::mt19937_64 rng(17);
    for (int size = 1; size <= 4; ++size) {
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<std::vector<BlockedPolynomial>> m;
            for (int r = 0; r < size; ++r) {
                std::vector<BlockedPolynomial> row;
                for (int c = 0; c < size; ++c)
                    row.push_back(random_poly(blocks, rng, 1));
                m.push_back(std::move(row));
            }
            CHECK(det_cofactor(m) == det_bareiss(m));
        }
    }
}

TEST_CASE("determinant of a triangular matrix is the diagonal product") {
    std::vector<int> blocks{1, 1};
    BlockedPolynomial z0 = BlockedPolynomial::variable(blocks, 0);
    BlockedPolynomial z1 = BlockedPolynomial::variable(blocks, 1);
    BlockedPolynomial zero(blocks);
    std::vector<std::vector<BlockedPolynomial>> m{{z0, z1}, {zero, z1 + z0}};
    CHECK(det_bareiss(m) == z0 * (z1 + z0));
    CHECK(det_cofactor(m) == z0 * (z1 + z0));
    // swapped rows flip the sign
    std::vector<std::vector<BlockedPolynomial>> sw{{zero, z1 + z0}, {z0, z1}};
    CHECK(det_bareiss(sw) == -(z0 * (z1 + z0)));
}
