#include "doctest.h"
#include "test_support.hpp"

#include "fewnomial/solver.hpp"

#include <cmath>

using namespace fewnomial;
using fewnomial::testing::worked_example;

TEST_CASE("two trinomials with known roots") {
    SolutionSet sols = solve_real(worked_example());
    CHECK(sols.suspects.empty());
    CHECK(sols.positive_count() == 1);
    CHECK(sols.real_count() == 2);
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    bool found = false;
    for (const auto& s : sols.points) {
        CHECK(s.residual < 1e-9);
        CHECK(s.nondegenerate);
        if (s.positive) {
            CHECK(s.point[0] == doctest::Approx(golden));
            CHECK(s.point[1] == doctest::Approx(golden));
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("hand-solved two-variable systems") {
    struct Case {
        const char* json;
        int positive;
        int real;
    };
    const Case cases[] = {
        // x + y = 3, xy = 2: roots (1,2) and (2,1)
        {R"({"n":2,"polys":[
            [{"e":[1,0],"c":"1"},{"e":[0,1],"c":"1"},{"e":[0,0],"c":"-3"}],
            [{"e":[1,1],"c":"1"},{"e":[0,0],"c":"-2"}]]})",
         2, 2},
        // x^2 = 1, y^2 = 4: four sign choices, one positive
        {R"({"n":2,"polys":[
            [{"e":[2,0],"c":"1"},{"e":[0,0],"c":"-1"}],
            [{"e":[0,2],"c":"1"},{"e":[0,0],"c":"-4"}]]})",
         1, 4},
        // x^2 - 5x + 6 = 0, y = x: roots (2,2) and (3,3)
        {R"({"n":2,"polys":[
            [{"e":[2,0],"c":"1"},{"e":[1,0],"c":"-5"},{"e":[0,0],"c":"6"}],
            [{"e":[1,0],"c":"1"},{"e":[0,1],"c":"-1"}]]})",
         2, 2},
        // x^2 + 1 = 0, y = 1: empty real zero set
        {R"({"n":2,"polys":[
            [{"e":[2,0],"c":"1"},{"e":[0,0],"c":"1"}],
            [{"e":[0,1],"c":"1"},{"e":[0,0],"c":"-1"}]]})",
         0, 0},
        // x = y^2, xy = 1: the single real root (1,1)
        {R"({"n":2,"polys":[
            [{"e":[1,0],"c":"1"},{"e":[0,2],"c":"-1"}],
            [{"e":[1,1],"c":"1"},{"e":[0,0],"c":"-1"}]]})",
         1, 1},
        // x^2 = 1, x + y = 3: (1,2) and (-1,4)
        {R"({"n":2,"polys":[
            [{"e":[2,0],"c":"1"},{"e":[0,0],"c":"-1"}],
            [{"e":[1,0],"c":"1"},{"e":[0,1],"c":"1"},{"e":[0,0],"c":"-3"}]]})",
         1, 2},
    };
    for (const Case& c : cases) {
        CAPTURE(c.json);
        FewnomialSystem sys = parse_system(c.json);
        SolutionSet sols = solve_real(sys);
        CHECK(sols.suspects.empty());
        CHECK(sols.positive_count() == c.positive);
        CHECK(sols.real_count() == c.real);
    }
}

TEST_CASE("three-variable corner case") {
    FewnomialSystem sys = parse_system(
        R"({"n":3,"polys":[
            [{"e":[2,0,0],"c":"1"},{"e":[0,0,0],"c":"-1"}],
            [{"e":[0,2,0],"c":"1"},{"e":[0,0,0],"c":"-1"}],
            [{"e":[0,0,2],"c":"1"},{"e":[0,0,0],"c":"-1"}]]})");
    SolutionSet sols = solve_real(sys);
    CHECK(sols.positive_count() == 1);
    CHECK(sols.real_count() == 8);
}

TEST_CASE("degenerate roots are flagged, not counted") {
    // (x - 1)^2 = 0, y = 1: a double root on the positive orthant
    FewnomialSystem sys = parse_system(
        R"({"n":2,"polys":[
            [{"e":[2,0],"c":"1"},{"e":[1,0],"c":"-2"},{"e":[0,0],"c":"1"}],
            [{"e":[0,1],"c":"1"},{"e":[0,0],"c":"-1"}]]})");
    SolutionSet sols = solve_real(sys);
    CHECK(sols.real_count() == 0);
    CHECK_FALSE(sols.suspects.empty());
}

TEST_CASE("input guards") {
    FewnomialSystem big;
    big.n = 4;
    for (int i = 0; i < 4; ++i)
        big.polynomials.emplace_back(4);
    CHECK_THROWS_AS(solve_real(big), Error);

    FewnomialSystem high = parse_system(
        R"({"n":1,"polys":[[{"e":[9],"c":"1"},{"e":[0],"c":"-1"}]]})");
    CHECK_THROWS_WITH_AS(solve_real(high), doctest::Contains("degree budget"), Error);
}

TEST_CASE("counting is deterministic") {
    FewnomialSystem sys = worked_example();
    SolutionSet a = solve_real(sys);
    SolutionSet b = solve_real(sys);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].orthant == b.points[i].orthant);
        for (int m = 0; m < sys.n; ++m)
            CHECK(a.points[i].point[m] == b.points[i].point[m]);
    }
    CHECK(count_positive(sys) == 1);
    CHECK(count_real_torus(sys) == 2);
}

TEST_CASE("Gale bijection on the two-trinomial example") {
    MixedStructure ms = detect_mixed_structure(worked_example());
    GaleBijectionReport rep = verify_gale_bijection(ms);
    CHECK(rep.x_positive == 1);
    CHECK(rep.x_real == 2);
    CHECK(rep.gale_positive_chamber == 1);
    CHECK(rep.positive_match);
    CHECK(rep.real_compared);
    CHECK(rep.gale_all_chambers == 2);
    CHECK(rep.real_match);
    CHECK(rep.matched_pairs == 2);
    CHECK_FALSE(rep.has_suspects);
}

TEST_CASE("Gale real comparison is skipped for even lattice index") {
    // x^2 = 1 + (1/2) x^2 y^2,  y^2 = 1 + (1/4) x^4: every exponent is even
    FewnomialSystem sys = parse_system(
        R"({"n":2,"polys":[
            [{"e":[2,0],"c":"1"},{"e":[2,2],"c":"-1/2"},{"e":[0,0],"c":"-1"}],
            [{"e":[0,2],"c":"1"},{"e":[4,0],"c":"-1/4"},{"e":[0,0],"c":"-1"}]]})");
    MixedStructure ms = detect_mixed_structure(sys);
    CHECK_FALSE(odd_index_check(exponent_matrix(ms)));
    GaleBijectionReport rep = verify_gale_bijection(ms);
    CHECK_FALSE(rep.real_compared);
    CHECK(rep.skip_reason.find("even lattice index") != std::string::npos);
    CHECK(rep.positive_match);
}
