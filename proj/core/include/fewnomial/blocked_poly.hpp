#pragma once

#include "fewnomial/rational.hpp"

#include <map>
#include <vector>

namespace fewnomial {

/// Exact multivariate polynomial whose variables are grouped into blocks
/// z_1,...,z_n of sizes l_1..l_n (flattened to l coordinates).
class BlockedPolynomial {
public:
    using Exponents = std::vector<int>;

    explicit BlockedPolynomial(std::vector<int> block_sizes);

    static BlockedPolynomial constant(std::vector<int> block_sizes, const Rational& c);
    static BlockedPolynomial variable(std::vector<int> block_sizes, int flat_var);
    /// q_i(z_i) = 1 + z_{i,1} + ... + z_{i,l_i}
    static BlockedPolynomial q_polynomial(std::vector<int> block_sizes, int block);

    const std::vector<int>& block_sizes() const { return block_sizes_; }
    int var_count() const { return nvars_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents& e, const Rational& c);

    BlockedPolynomial operator+(const BlockedPolynomial& o) const;
    BlockedPolynomial operator-(const BlockedPolynomial& o) const;
    BlockedPolynomial operator*(const BlockedPolynomial& o) const;
    BlockedPolynomial operator*(const Rational& c) const;
    BlockedPolynomial operator-() const;
    bool operator==(const BlockedPolynomial& o) const;

    BlockedPolynomial derivative(int flat_var) const;
    /// z_v * p
    BlockedPolynomial times_variable(int flat_var) const;

    /// Exact quotient; throws if the division leaves a remainder.
    BlockedPolynomial exact_divide(const BlockedPolynomial& divisor) const;

    /// Per-block total degrees (max over terms); -1 entries for the zero
    /// polynomial.
    std::vector<int> multidegree() const;

private:
    std::vector<int> block_sizes_;
    int nvars_ = 0;
    std::map<Exponents, Rational> terms_;
};

/// Determinant by cofactor expansion along the first row.
BlockedPolynomial det_cofactor(const std::vector<std::vector<BlockedPolynomial>>& m);
/// Determinant by fraction-free Bareiss elimination; independent code path.
BlockedPolynomial det_bareiss(const std::vector<std::vector<BlockedPolynomial>>& m);

}  // namespace fewnomial
