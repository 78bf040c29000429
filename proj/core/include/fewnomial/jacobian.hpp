#pragma once

#include "fewnomial/blocked_poly.hpp"
#include "fewnomial/lattice.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fewnomial {

/// delta = prod_i q_i(z_i) * prod_{i,j} z_{i,j}, the common denominator of the
/// gradients of the log master functions.
BlockedPolynomial common_denominator(const std::vector<int>& block_sizes);

/// delta * det Jac(phi_1..phi_k, F_{k+1}..F_l), computed exactly. `alphas` is
/// the l x (n+l) exponent matrix in canonical column order ((i,0), (i,1..l_i)
/// blockwise); rows 0..k-1 supply the phi's. `f_tail` holds F_{k+1}..F_l.
/// The structural denominators must cancel; non-cancellation throws.
BlockedPolynomial jacobian_numerator(const std::vector<int>& block_sizes, const IntMatrix& alphas,
                                     int k, const std::vector<BlockedPolynomial>& f_tail);

/// Square submatrix of (d phi_r / d z_{i,j}): selected phi rows and selected
/// variable columns (flat indices).
struct MinorSpec {
    std::vector<int> phi_rows;
    std::vector<int> columns;
};

/// delta_M * det(M) with delta_M = prod of all q_i and of the selected-column
/// variables. The empty minor yields prod q_i.
BlockedPolynomial minor_numerator(const std::vector<int>& block_sizes, const IntMatrix& alphas,
                                  const MinorSpec& spec);

struct DetDegTrial {
    int k = 0;
    std::vector<int> observed;  // numerator multidegree
    std::vector<int> bound;     // 1 + sum of tail multidegrees
    bool within_bound = true;
    bool equality = true;
};

struct DetDegReport {
    int trials = 0;
    int bound_violations = 0;   // numerator multidegree above 1 + sum d_m
    int minor_violations = 0;   // some delta_M det M with block degree > 1
    int equality_trials = 0;    // trials achieving the bound in every block, every k
    double equality_rate = 0.0;
    bool ladder_identity_ok = true;  // prod of ladder degrees is 2^binom(l-k,2)
    std::vector<DetDegTrial> details;
};

/// Random verification harness: draws integer alpha (entries in [-9,9]\{0},
/// full rank) and random tail polynomials F_m of multidegree 2^{l-m}, then
/// checks the numerator multidegree bound for every k and every minor.
DetDegReport random_detdeg_suite(const std::vector<int>& block_sizes, int trials, std::uint64_t seed);

}  // namespace fewnomial
