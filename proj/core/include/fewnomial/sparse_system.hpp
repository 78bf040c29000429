#pragma once

#include "fewnomial/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace fewnomial {

/// Exponent of a Laurent monomial, one entry per ambient variable.
using ExponentVector = std::vector<long>;

/// Sparse Laurent polynomial over Q with exact coefficients.
/// Invariant: no zero coefficient is stored; every key has length ambient_n.
class LaurentPolynomial {
public:
    explicit LaurentPolynomial(int ambient_n);

    int ambient_n() const { return ambient_n_; }
    const std::map<ExponentVector, Rational>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c*x^e, erasing the term if the sum cancels.
    void add_term(const ExponentVector& e, const Rational& c);
    Rational coefficient(const ExponentVector& e) const;
    bool has_constant_term() const;

    LaurentPolynomial operator*(const LaurentPolynomial& other) const;
    LaurentPolynomial operator-(const LaurentPolynomial& other) const;

    /// Shift all exponents by -e (division by the monomial x^e).
    LaurentPolynomial divided_by_monomial(const ExponentVector& e) const;

    /// Evaluate at a point with nonzero coordinates.
    double evaluate(const std::vector<double>& x) const;
    /// Sum of absolute term magnitudes at x; scale for relative residuals.
    double magnitude(const std::vector<double>& x) const;

private:
    int ambient_n_;
    std::map<ExponentVector, Rational> terms_;
};

/// Square system of n Laurent polynomials in n variables.
struct FewnomialSystem {
    int n = 0;
    std::vector<LaurentPolynomial> polynomials;
};

/// Decomposition x^{w_{i,0}} = a_{i,0} + sum_j a_{i,j} x^{w_{i,j}} per equation.
struct MixedStructure {
    int n = 0;
    std::vector<int> block_sizes;                       // l_i
    int l = 0;                                          // sum of l_i
    std::vector<ExponentVector> lead_exponents;         // w_{i,0}
    std::vector<std::vector<ExponentVector>> body_exponents;  // w_{i,j}, j>=1
    std::vector<Rational> constant_coeffs;              // a_{i,0}
    std::vector<std::vector<Rational>> body_coeffs;     // a_{i,j}, j>=1
};

FewnomialSystem parse_system(const std::string& json_text);
std::string serialize_system(const FewnomialSystem& sys);

/// Divide each polynomial by its lexicographically smallest monomial so that
/// every equation has a constant term; torus solutions are unchanged.
FewnomialSystem normalize_constant_terms(const FewnomialSystem& sys);

/// Recover the mixed decomposition. Requires constant terms everywhere and
/// globally distinct nonconstant monomials; every l_i must be positive.
MixedStructure detect_mixed_structure(const FewnomialSystem& sys);

/// Rebuild the polynomial system -x^{w_{i,0}} + a_{i,0} + sum a_{i,j} x^{w_{i,j}}.
FewnomialSystem system_from_structure(const MixedStructure& ms);

/// Remove one binomial equation c0 + c1*x^w = 0 by a unimodular monomial
/// change of coordinates followed by fixing the distinguished coordinate to
/// the positive root of s^d = -c0/c1. Preserves the positive-solution count.
FewnomialSystem eliminate_binomials(const FewnomialSystem& sys);

}  // namespace fewnomial
