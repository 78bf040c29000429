#pragma once

#include "fewnomial/rational.hpp"
#include "fewnomial/sparse_system.hpp"

#include <utility>
#include <vector>

namespace fewnomial {

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Integer& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Integer& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    static IntMatrix identity(int n);
    IntMatrix transposed() const;
    IntMatrix operator*(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const = default;

    void swap_rows(int a, int b);
    /// row[a] += f * row[b]
    void add_row_multiple(int a, int b, const Integer& f);
    void negate_row(int r);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Integer> data_;
};

/// All exponent rows w_{i,j} of a mixed structure, in block order
/// (i = 1..n, j = 0..l_i); (n+l) x n.
struct ExponentMatrix {
    IntMatrix rows;                       // (n+l) x n
    std::vector<std::pair<int, int>> row_labels;  // (i, j) per row, 0-based i
};

ExponentMatrix exponent_matrix(const MixedStructure& ms);

/// Basis of the saturated lattice of integer relations among the rows of W.
struct RelationBasis {
    IntMatrix alphas;                     // l x (n+l)
    std::vector<std::pair<int, int>> column_labels;  // (i, j) per column
};

/// Row-style Hermite normal form H = U * A with U unimodular.
/// Returns {H, U}; H has its nonzero rows first, pivots positive.
std::pair<IntMatrix, IntMatrix> hermite_normal_form(const IntMatrix& a);

/// Rank over Q (via HNF pivot count).
int integer_rank(const IntMatrix& a);

/// Diagonal of the Smith normal form (nonzero elementary divisors).
std::vector<Integer> smith_normal_form(const IntMatrix& a);

/// Basis of {v : v * W = 0}; requires rank(W) = n. The kernel of an integer
/// matrix is saturated by construction; this is re-checked via SNF.
RelationBasis kernel_basis(const ExponentMatrix& w);

/// [Z^n : ZW], the product of elementary divisors. Requires rank(W) = n.
Integer lattice_index(const ExponentMatrix& w);

bool odd_index_check(const ExponentMatrix& w);

/// Canonical form of the row lattice (HNF with zero rows dropped);
/// two bases span the same lattice iff their canonical forms agree.
IntMatrix lattice_canonical_form(const IntMatrix& basis);

}  // namespace fewnomial
