#include "doctest.h"
#include "test_support.hpp"

#include "fewnomial/bounds.hpp"

#include <cmath>

using namespace fewnomial;
using fewnomial::testing::worked_example;

namespace {

// Independent recomputation of a_k with odometer loops instead of recursion.
Integer a_k_oracle(const std::vector<int>& blocks, int k) {
    const int n = static_cast<int>(blocks.size());
    int l = 0;
    for (int li : blocks)
        l += li;
    const int target = l - k;
    std::vector<int> j(static_cast<std::size_t>(n), 0);
    Integer sum = 0;
    for (;;) {
        int total = 0;
        for (int v : j)
            total += v;
        if (total == target) {
            Integer term = factorial(static_cast<unsigned long>(target));
            for (int i = 0; i < n; ++i) {
                term /= factorial(static_cast<unsigned long>(j[i]));
                term *= binomial(static_cast<unsigned long>(blocks[i] + 2),
                                 static_cast<unsigned long>(j[i] + 2));
            }
            sum += term;
        }
        int i = 0;
        while (i < n && j[i] == blocks[i])
            j[i++] = 0;
        if (i == n)
            break;
        ++j[i];
    }
    unsigned long c2 = target < 2 ? 0ul : static_cast<unsigned long>(target * (target - 1) / 2);
    return sum * pow2(c2);
}

}  // namespace

TEST_CASE("exponential enclosures are tight and correct") {
    RationalInterval e2 = exp_power_enclosure(2);
    RationalInterval e4 = exp_power_enclosure(4);
    // enclosures are far tighter than double precision: compare midpoints
    CHECK(e2.lo.get_d() == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    CHECK(e4.lo.get_d() == doctest::Approx(std::exp(4.0)).epsilon(1e-14));
    CHECK(e2.lo <= e2.hi);
    CHECK(e4.lo <= e4.hi);
    CHECK(Rational(e2.hi - e2.lo).get_d() < 1e-30);
    CHECK(Rational(e4.hi - e4.lo).get_d() < 1e-30);
}

TEST_CASE("classical bound floors") {
    CHECK(khovanskii_bound(1, 1).floor() == 8);
    CHECK(khovanskii_bound(2, 2).floor() == 5184);
    CHECK(bs07_positive_bound(2, 2).floor() == 20);
    CHECK(bbs_real_bound(2, 2).floor() == 115);
}

TEST_CASE("mixed bound floors") {
    CHECK(mixed_bound({1, 1}, BoundVariant::Positive).floor() == 10);
    CHECK(mixed_bound({1, 1}, BoundVariant::Real).floor() == 57);
    // blocks (2,1): 2^3 * multinomial(3;2,1) = 24, prefactors (e^2+3)/4, (e^4+3)/4
    CHECK(mixed_bound({2, 1}, BoundVariant::Positive).floor() == 62);
    CHECK(mixed_bound({2, 1}, BoundVariant::Real).floor() == 345);
    CHECK_THROWS_AS(mixed_bound({3}, BoundVariant::Positive), Error);
    CHECK_THROWS_AS(mixed_bound({1, 0}, BoundVariant::Positive), Error);
}

TEST_CASE("mixed bound strictly dominates the unstructured one") {
    // multinomial(l; l_1..l_n) < n^l whenever n >= 2
    std::vector<std::vector<int>> cases{{1, 1}, {2, 1}, {2, 2}, {3, 1}, {1, 1, 1}, {2, 1, 1}, {3, 2, 1}};
    for (const auto& blocks : cases) {
        int n = static_cast<int>(blocks.size());
        int l = 0;
        for (int li : blocks)
            l += li;
        Integer nl;
        mpz_ui_pow_ui(nl.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(l));
        CHECK(multinomial(l, blocks) < nl);
        CHECK(mixed_bound(blocks, BoundVariant::Positive).floor() <=
              bs07_positive_bound(n, l).floor());
    }
}

TEST_CASE("small combinatorial bounds") {
    CHECK(lrw_bound(2, 3) == 6);
    CHECK(lrw_bound(3, 3) == 12);
    CHECK(lrw_bound(2, 4) == 14);
    CHECK(avendano_bound(3) == 14);
    CHECK(avendano_bound(2) == 8);
    CHECK(multinomial(3, {2, 1}) == 3);
    CHECK(multinomial(4, {2, 2}) == 6);
    CHECK(multinomial(2, {1, 1}) == 2);
    CHECK_THROWS_AS(multinomial(3, {2, 2}), Error);
}

TEST_CASE("chamber counts a_k for two trinomials") {
    CHECK(a_k({1, 1}, 0) == 4);
    CHECK(a_k({1, 1}, 1) == 6);
    CHECK(a_k({1, 1}, 2) == 9);
    CHECK(bracket_sum({1, 1}, true) == 48);
    CHECK(bracket_sum({1, 1}, false) == 15);
}

TEST_CASE("a_k agrees with an independent enumeration") {
    std::vector<std::vector<int>> cases{{1, 1}, {2, 1}, {2, 2}, {3, 2}, {1, 1, 1},
                                        {2, 2, 1}, {3, 3}, {4, 2, 1}};
    for (const auto& blocks : cases) {
        int l = 0;
        for (int li : blocks)
            l += li;
        for (int k = 0; k <= l; ++k)
            CHECK(a_k(blocks, k) == a_k_oracle(blocks, k));
    }
}

TEST_CASE("chamber-count inequalities hold across block shapes") {
    std::vector<std::vector<int>> small{{2, 1}, {1, 1, 1}};  // l = 3: lemma only
    for (const auto& blocks : small) {
        InequalityReport rep = verify_inequalities(blocks);
        CHECK_FALSE(rep.intbound_checked);
        CHECK(rep.lemma_ok_real);
        CHECK(rep.lemma_ok_chamber);
    }
    std::vector<std::vector<int>> large{{3, 2}, {4, 1}, {2, 2, 1}, {3, 3}, {4, 3},
                                        {2, 2, 2, 2}, {5, 4}, {3, 3, 3}};
    for (const auto& blocks : large) {
        InequalityReport rep = verify_inequalities(blocks);
        CHECK(rep.intbound_checked);
        CHECK(rep.intbound_ok);
        CHECK(rep.intbound_failures.empty());
        CHECK(rep.lemma_ok_real);
        CHECK(rep.lemma_ok_chamber);
    }
}

TEST_CASE("multinomial sum identity") {
    for (int n = 1; n <= 4; ++n)
        for (int l = 0; l <= 8; ++l)
            CHECK(multinomial_identity_check(n, l));
}

TEST_CASE("best_bound on the two-trinomial example") {
    MixedStructure ms = detect_mixed_structure(worked_example());
    BoundReport rep = best_bound(ms, IndexInfo{1, true});
    CHECK(rep.n == 2);
    CHECK(rep.l == 2);
    CHECK(rep.odd_index);
    REQUIRE(rep.find("khovanskii"));
    CHECK(rep.find("khovanskii")->bound->floor() == 5184);
    CHECK(rep.find("bs07_positive")->bound->floor() == 20);
    CHECK(rep.find("bbs_real")->bound->floor() == 115);
    CHECK(rep.find("mixed_positive")->bound->floor() == 10);
    CHECK(rep.find("mixed_real")->bound->floor() == 57);
    REQUIRE(rep.find("lrw"));
    CHECK(rep.find("lrw")->applicable);
    // two trinomials in two variables: 5 positive, 20 real
    CHECK(rep.operative_positive == 5);
    REQUIRE(rep.operative_real.has_value());
    CHECK(*rep.operative_real == 20);
}

TEST_CASE("best_bound gates the real column on the lattice index parity") {
    MixedStructure ms = detect_mixed_structure(worked_example());
    BoundReport rep = best_bound(ms, IndexInfo{4, false});
    const BoundEntry* bbs = rep.find("bbs_real");
    REQUIRE(bbs);
    CHECK_FALSE(bbs->applicable);
    CHECK(bbs->reason.find("even lattice index") != std::string::npos);
    CHECK_FALSE(rep.operative_real.has_value());
    CHECK(rep.operative_positive == 5);  // positive bounds are unaffected
}
