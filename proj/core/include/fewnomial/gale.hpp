#pragma once

#include "fewnomial/lattice.hpp"
#include "fewnomial/rational.hpp"
#include "fewnomial/sparse_system.hpp"

#include <vector>

namespace fewnomial {

/// The Gale dual system: prod_i p_i(y_i)^{alpha_{i,0}} prod_j y_{i,j}^{alpha_{i,j}} = 1.
struct GaleSystem {
    MixedStructure structure;
    RelationBasis relations;
    int l = 0;

    /// Flat index of y_{i,j} (i 0-based, j in 1..l_i) in the y vector.
    int var_index(int i, int j) const;
    /// alpha^{(k)} entry for column (i, j), j = 0 meaning the p_i exponent.
    const Integer& alpha(int k, int i, int j) const;
};

GaleSystem build_gale_system(const MixedStructure& ms, const RelationBasis& rb);

/// y_{i,j} = x^{w_{i,j}}, blockwise order. Requires all x components nonzero.
std::vector<double> push_solution(const MixedStructure& ms, const std::vector<double>& x);

/// p_i(y_i) = a_{i,0} + sum_j a_{i,j} y_{i,j}
double evaluate_p(const MixedStructure& ms, int i, const std::vector<double>& y);

/// Residuals |prod ... - 1| of each Gale equation at y.
std::vector<double> gale_residuals(const GaleSystem& gs, const std::vector<double>& y);

/// The Gale equations with denominators cleared: a square polynomial system
/// in the l variables y, valid off y_{i,j} = 0 and p_i = 0.
FewnomialSystem gale_cleared_system(const GaleSystem& gs);

/// Master-function form after y_{i,j} = b_i z_{i,j} / a_{i,j}:
/// f_k(z) = prod |q_i|^{alpha_{i,0}} prod |z_{i,j}|^{alpha_{i,j}},  g_k = f_k - d_k.
struct MasterFunctionSystem {
    int n = 0;
    int l = 0;
    std::vector<int> block_sizes;
    IntMatrix alphas;                                 // l x (n+l)
    std::vector<std::pair<int, int>> column_labels;   // (i, j)
    std::vector<Rational> b;                          // b_i = a_{i,0}
    std::vector<Rational> d;                          // d_k = prod |b_i|^{-alpha_{i,0}}
    std::vector<Rational> y_scale;                    // y_{i,j} = y_scale * z_{i,j}, flat

    int var_index(int i, int j) const;
    const Integer& alpha(int k, int i, int j) const;

    std::vector<Rational> y_from_z(const std::vector<Rational>& z) const;
    std::vector<Rational> z_from_y(const std::vector<Rational>& y) const;
    std::vector<double> z_from_y(const std::vector<double>& y) const;

    /// q_i(z_i) = 1 + z_{i,1} + ... + z_{i,l_i}
    double evaluate_q(int i, const std::vector<double>& z) const;
};

MasterFunctionSystem normalize_to_z(const GaleSystem& gs);

/// All 2^{sum (l_i+1)} sign-flipped right-hand sides
/// x^{w_{i,0}} = +-a_{i,0} +- a_{i,1} x^{w_{i,1}} +- ...
std::vector<MixedStructure> enumerate_sign_systems(const MixedStructure& ms);

struct MasterValue {
    double f = 0;
    double phi = 0;
    double g = 0;
};

/// Requires z off the arrangement (no zero coordinate, no q_i(z_i) = 0).
MasterValue evaluate_master(const MasterFunctionSystem& mfs, int k, const std::vector<double>& z);

/// Chamber label: signs of every z_{i,j} followed by signs of every q_i(z_i).
struct SignVector {
    std::vector<int> z_signs;  // l entries, each +1 or -1
    std::vector<int> q_signs;  // n entries

    bool operator==(const SignVector&) const = default;
    bool all_positive() const;
};

SignVector chamber_of(const MasterFunctionSystem& mfs, const std::vector<double>& z);

}  // namespace fewnomial
