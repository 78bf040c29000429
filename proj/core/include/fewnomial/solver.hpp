#pragma once

#include "fewnomial/gale.hpp"
#include "fewnomial/sparse_system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fewnomial {

struct SolverOptions {
    double box = 10.0;          // search box [-box, box]^n in log-absolute coordinates
    double residual_tol = 1e-9;
    double cluster_radius = 1e-6;
    double min_cell_width = 1e-3;
    double jacobian_tol = 1e-8;
    int degree_cap = 8;         // per-variable exponent magnitude cap
    long cell_budget = 4000000;
};

struct Solution {
    std::vector<double> point;      // x coordinates
    std::vector<int> orthant;       // signs, one per coordinate
    double residual = 0.0;          // relative residual
    double jacobian_scale = 0.0;    // row-scaled |det Jac|
    bool positive = false;
    bool nondegenerate = true;
};

struct SolutionSet {
    std::vector<Solution> points;
    std::vector<Solution> suspects;  // flagged degenerate-looking hits
    long cells_visited = 0;

    int positive_count() const;
    int real_count() const;  // nondegenerate torus solutions
};

/// Exhaustive search for nondegenerate torus solutions inside the box:
/// per-orthant substitution x = sign * exp(u), interval exclusion with
/// bisection, then Newton polishing. Requires n <= 3.
SolutionSet solve_real(const FewnomialSystem& sys, const SolverOptions& opts = {});

int count_positive(const FewnomialSystem& sys, const SolverOptions& opts = {});
int count_real_torus(const FewnomialSystem& sys, const SolverOptions& opts = {});

struct GaleBijectionReport {
    int x_positive = 0;
    int x_real = 0;
    int gale_positive_chamber = 0;  // Gale solutions in Delta_+
    int gale_all_chambers = 0;      // Gale solutions in all valid chambers
    bool positive_match = false;
    bool real_compared = false;     // only when the lattice index is odd
    bool real_match = false;
    int matched_pairs = 0;          // x-solutions matched to y-solutions
    bool has_suspects = false;      // degenerate-looking roots on either side
    std::string skip_reason;        // set when the real comparison is skipped
};

/// Solves the original system and the cleared Gale system independently and
/// compares counts; a count mismatch is reported, not thrown.
GaleBijectionReport verify_gale_bijection(const MixedStructure& ms, const SolverOptions& opts = {});

}  // namespace fewnomial
