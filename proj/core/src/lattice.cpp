#include "fewnomial/lattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace fewnomial {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            t.at(c, r) = at(r, c);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_)
        throw Error("matrix dimension mismatch in product");
    IntMatrix p(rows_, other.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            if (at(r, k) == 0)
                continue;
            for (int c = 0; c < other.cols_; ++c)
                p.at(r, c) += at(r, k) * other.at(k, c);
        }
    return p;
}

void IntMatrix::swap_rows(int a, int b) {
    if (a == b)
        return;
    for (int c = 0; c < cols_; ++c)
        std::swap(at(a, c), at(b, c));
}

void IntMatrix::add_row_multiple(int a, int b, const Integer& f) {
    for (int c = 0; c < cols_; ++c)
        at(a, c) += f * at(b, c);
}

void IntMatrix::negate_row(int r) {
    for (int c = 0; c < cols_; ++c)
        at(r, c) = -at(r, c);
}

ExponentMatrix exponent_matrix(const MixedStructure& ms) {
    ExponentMatrix w;
    w.rows = IntMatrix(ms.n + ms.l, ms.n);
    int r = 0;
    for (int i = 0; i < ms.n; ++i) {
        for (int m = 0; m < ms.n; ++m)
            w.rows.at(r, m) = ms.lead_exponents[i][m];
        w.row_labels.emplace_back(i, 0);
        ++r;
        for (int j = 0; j < ms.block_sizes[i]; ++j) {
            for (int m = 0; m < ms.n; ++m)
                w.rows.at(r, m) = ms.body_exponents[i][j][m];
            w.row_labels.emplace_back(i, j + 1);
            ++r;
        }
    }
    return w;
}

std::pair<IntMatrix, IntMatrix> hermite_normal_form(const IntMatrix& a) {
    IntMatrix h = a;
    IntMatrix u = IntMatrix::identity(a.rows());
    int p = 0;  // next pivot row
    for (int col = 0; col < h.cols() && p < h.rows(); ++col) {
        // Clear below via gcd steps on rows p..end.
        for (;;) {
            int best = -1;
            for (int r = p; r < h.rows(); ++r) {
                if (h.at(r, col) == 0)
                    continue;
                if (best < 0 || mpz_cmpabs(h.at(r, col).get_mpz_t(), h.at(best, col).get_mpz_t()) < 0)
                    best = r;
            }
            if (best < 0)
                break;
            h.swap_rows(p, best);
            u.swap_rows(p, best);
            bool clean = true;
            for (int r = p + 1; r < h.rows(); ++r) {
                if (h.at(r, col) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(r, col).get_mpz_t(), h.at(p, col).get_mpz_t());
                h.add_row_multiple(r, p, -q);
                u.add_row_multiple(r, p, -q);
                if (h.at(r, col) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (p < h.rows() && h.at(p, col) != 0) {
            if (h.at(p, col) < 0) {
                h.negate_row(p);
                u.negate_row(p);
            }
            // Reduce entries above the pivot into [0, pivot).
            for (int r = 0; r < p; ++r) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(r, col).get_mpz_t(), h.at(p, col).get_mpz_t());
                if (q != 0) {
                    h.add_row_multiple(r, p, -q);
                    u.add_row_multiple(r, p, -q);
                }
            }
            ++p;
        }
    }
    return {h, u};
}

int integer_rank(const IntMatrix& a) {
    auto [h, u] = hermite_normal_form(a);
    (void)u;
    int rank = 0;
    for (int r = 0; r < h.rows(); ++r) {
        bool nonzero = false;
        for (int c = 0; c < h.cols(); ++c)
            if (h.at(r, c) != 0)
                nonzero = true;
        if (nonzero)
            ++rank;
    }
    return rank;
}

namespace {

void add_col_multiple(IntMatrix& m, int a, int b, const Integer& f) {
    for (int r = 0; r < m.rows(); ++r)
        m.at(r, a) += f * m.at(r, b);
}

void swap_cols(IntMatrix& m, int a, int b) {
    if (a == b)
        return;
    for (int r = 0; r < m.rows(); ++r)
        std::swap(m.at(r, a), m.at(r, b));
}

}  // namespace

std::vector<Integer> smith_normal_form(const IntMatrix& a) {
    IntMatrix m = a;
    std::vector<Integer> divisors;
    int t = 0;
    while (t < m.rows() && t < m.cols()) {
        // Move the minimal nonzero entry of the trailing submatrix to (t, t).
        int bi = -1, bj = -1;
        for (int i = t; i < m.rows(); ++i)
            for (int j = t; j < m.cols(); ++j) {
                if (m.at(i, j) == 0)
                    continue;
                if (bi < 0 || mpz_cmpabs(m.at(i, j).get_mpz_t(), m.at(bi, bj).get_mpz_t()) < 0) {
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0)
            break;
        m.swap_rows(t, bi);
        swap_cols(m, t, bj);

        bool dirty = false;
        for (int i = t + 1; i < m.rows(); ++i) {
            if (m.at(i, t) == 0)
                continue;
            Integer q;
            mpz_tdiv_q(q.get_mpz_t(), m.at(i, t).get_mpz_t(), m.at(t, t).get_mpz_t());
            m.add_row_multiple(i, t, -q);
            if (m.at(i, t) != 0)
                dirty = true;
        }
        for (int j = t + 1; j < m.cols(); ++j) {
            if (m.at(t, j) == 0)
                continue;
            Integer q;
            mpz_tdiv_q(q.get_mpz_t(), m.at(t, j).get_mpz_t(), m.at(t, t).get_mpz_t());
            add_col_multiple(m, j, t, -q);
            if (m.at(t, j) != 0)
                dirty = true;
        }
        if (dirty)
            continue;
        // Enforce divisibility of the rest by the pivot.
        bool fixed = false;
        for (int i = t + 1; i < m.rows() && !fixed; ++i)
            for (int j = t + 1; j < m.cols() && !fixed; ++j)
                if (m.at(i, j) % m.at(t, t) != 0) {
                    m.add_row_multiple(t, i, Integer(1));
                    fixed = true;
                }
        if (fixed)
            continue;
        divisors.push_back(abs(m.at(t, t)));
        ++t;
    }
    return divisors;
}

RelationBasis kernel_basis(const ExponentMatrix& w) {
    const int n = w.rows.cols();
    const int total = w.rows.rows();
    auto [h, u] = hermite_normal_form(w.rows);
    int rank = 0;
    for (int r = 0; r < total; ++r) {
        bool nonzero = false;
        for (int c = 0; c < n; ++c)
            if (h.at(r, c) != 0)
                nonzero = true;
        if (nonzero)
            ++rank;
    }
    if (rank < n)
        throw Error("rank deficiency: exponent vectors do not span Q^n");

    RelationBasis rb;
    const int l = total - n;
    rb.alphas = IntMatrix(l, total);
    for (int k = 0; k < l; ++k)
        for (int c = 0; c < total; ++c)
            rb.alphas.at(k, c) = u.at(n + k, c);
    rb.column_labels = w.row_labels;

    // Left kernel of an integer matrix is saturated; re-check via SNF.
    if (l > 0) {
        auto divisors = smith_normal_form(rb.alphas);
        if (static_cast<int>(divisors.size()) != l)
            throw Error("internal error: kernel basis rank deficient");
        for (const auto& d : divisors)
            if (d != 1)
                throw Error("internal error: kernel basis not saturated");
    }
    return rb;
}

Integer lattice_index(const ExponentMatrix& w) {
    const int n = w.rows.cols();
    auto divisors = smith_normal_form(w.rows);
    if (static_cast<int>(divisors.size()) < n)
        throw Error("infinite index: exponent vectors do not span Q^n");
    Integer idx = 1;
    for (const auto& d : divisors)
        idx *= d;
    return idx;
}

bool odd_index_check(const ExponentMatrix& w) {
    return lattice_index(w) % 2 != 0;
}

IntMatrix lattice_canonical_form(const IntMatrix& basis) {
    auto [h, u] = hermite_normal_form(basis);
    (void)u;
    int rank = 0;
    for (int r = 0; r < h.rows(); ++r) {
        bool nonzero = false;
        for (int c = 0; c < h.cols(); ++c)
            if (h.at(r, c) != 0)
                nonzero = true;
        if (nonzero)
            ++rank;
    }
    IntMatrix out(rank, h.cols());
    for (int r = 0; r < rank; ++r)
        for (int c = 0; c < h.cols(); ++c)
            out.at(r, c) = h.at(r, c);
    return out;
}

}  // namespace fewnomial
