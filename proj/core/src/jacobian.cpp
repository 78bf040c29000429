#include "fewnomial/jacobian.hpp"

#include <functional>
#include <numeric>
#include <random>

namespace fewnomial {

namespace {

int total_vars(const std::vector<int>& blocks) {
    return std::accumulate(blocks.begin(), blocks.end(), 0);
}

// alpha column of (i, j) in canonical order: (i,0), (i,1..l_i) blockwise.
int alpha_column(const std::vector<int>& blocks, int i, int j) {
    int off = 0;
    for (int t = 0; t < i; ++t)
        off += blocks[t] + 1;
    return off + j;
}

// flat variable index -> (block, j) with j >= 1
std::pair<int, int> var_block(const std::vector<int>& blocks, int flat) {
    int i = 0;
    while (flat >= blocks[i]) {
        flat -= blocks[i];
        ++i;
    }
    return {i, flat + 1};
}

struct QProducts {
    std::vector<BlockedPolynomial> q;        // q_i
    BlockedPolynomial all;                   // prod q_i
    std::vector<BlockedPolynomial> all_but;  // prod_{t != i} q_t
};

QProducts build_q_products(const std::vector<int>& blocks) {
    const int n = static_cast<int>(blocks.size());
    QProducts qp{{}, BlockedPolynomial::constant(blocks, Rational(1)), {}};
    for (int i = 0; i < n; ++i)
        qp.q.push_back(BlockedPolynomial::q_polynomial(blocks, i));
    for (int i = 0; i < n; ++i)
        qp.all = qp.all * qp.q[i];
    for (int i = 0; i < n; ++i) {
        BlockedPolynomial p = BlockedPolynomial::constant(blocks, Rational(1));
        for (int t = 0; t < n; ++t)
            if (t != i)
                p = p * qp.q[t];
        qp.all_but.push_back(std::move(p));
    }
    return qp;
}

// Entry of the column-and-row scaled phi Jacobian:
// z_{i,j} * (prod q) * d phi_r / d z_{i,j}
//   = alpha_{i,j} * prod q  +  alpha_{i,0} * z_{i,j} * prod_{t != i} q_t
BlockedPolynomial scaled_phi_entry(const std::vector<int>& blocks, const IntMatrix& alphas, int r,
                                   int flat, const QProducts& qp) {
    auto [i, j] = var_block(blocks, flat);
    Rational aij(alphas.at(r, alpha_column(blocks, i, j)));
    Rational ai0(alphas.at(r, alpha_column(blocks, i, 0)));
    BlockedPolynomial entry = qp.all * aij;
    entry = entry + BlockedPolynomial::variable(blocks, flat) * qp.all_but[i] * ai0;
    return entry;
}

BlockedPolynomial divide_q_power(BlockedPolynomial p, const QProducts& qp, int power) {
    for (int t = 0; t < power; ++t)
        p = p.exact_divide(qp.all);
    return p;
}

}  // namespace

BlockedPolynomial common_denominator(const std::vector<int>& block_sizes) {
    QProducts qp = build_q_products(block_sizes);
    BlockedPolynomial delta = qp.all;
    for (int v = 0; v < total_vars(block_sizes); ++v)
        delta = delta.times_variable(v);
    return delta;
}

BlockedPolynomial jacobian_numerator(const std::vector<int>& block_sizes, const IntMatrix& alphas,
                                     int k, const std::vector<BlockedPolynomial>& f_tail) {
    const int l = total_vars(block_sizes);
    if (k < 0 || k > l)
        throw Error("jacobian_numerator requires 0 <= k <= l");
    if (static_cast<int>(f_tail.size()) != l - k)
        throw Error("expected " + std::to_string(l - k) + " tail polynomials");
    if (alphas.rows() < k || alphas.cols() != static_cast<int>(block_sizes.size()) + l)
        throw Error("alpha matrix dimensions do not match the block structure");

    QProducts qp = build_q_products(block_sizes);
    std::vector<std::vector<BlockedPolynomial>> m;
    for (int r = 0; r < l; ++r) {
        std::vector<BlockedPolynomial> row;
        for (int v = 0; v < l; ++v) {
            if (r < k)
                row.push_back(scaled_phi_entry(block_sizes, alphas, r, v, qp));
            else
                row.push_back(f_tail[r - k].derivative(v).times_variable(v));
        }
        m.push_back(std::move(row));
    }
    BlockedPolynomial det = det_bareiss(m);
    // det = (prod z)(prod q)^k * det Jac; the numerator is delta * det Jac.
    if (k == 0)
        return det * qp.all;
    return divide_q_power(det, qp, k - 1);
}

BlockedPolynomial minor_numerator(const std::vector<int>& block_sizes, const IntMatrix& alphas,
                                  const MinorSpec& spec) {
    if (spec.phi_rows.size() != spec.columns.size())
        throw Error("minor must be square");
    QProducts qp = build_q_products(block_sizes);
    const int s = static_cast<int>(spec.phi_rows.size());
    if (s == 0)
        return qp.all;  // det of the empty matrix is 1
    std::vector<std::vector<BlockedPolynomial>> m;
    for (int r : spec.phi_rows) {
        std::vector<BlockedPolynomial> row;
        for (int v : spec.columns)
            row.push_back(scaled_phi_entry(block_sizes, alphas, r, v, qp));
        m.push_back(std::move(row));
    }
    return divide_q_power(det_bareiss(m), qp, s - 1);
}

namespace {

IntMatrix random_alpha(const std::vector<int>& blocks, std::mt19937_64& rng) {
    const int l = total_vars(blocks);
    const int cols = static_cast<int>(blocks.size()) + l;
    std::uniform_int_distribution<int> entry(-9, 9);
    for (;;) {
        IntMatrix a(l, cols);
        for (int r = 0; r < l; ++r)
            for (int c = 0; c < cols; ++c) {
                int v = 0;
                while (v == 0)
                    v = entry(rng);
                a.at(r, c) = v;
            }
        if (integer_rank(a) == l)
            return a;
    }
}

BlockedPolynomial random_multidegree_poly(const std::vector<int>& blocks, int degree,
                                          std::mt19937_64& rng) {
    const int n = static_cast<int>(blocks.size());
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> extra_terms(2, 4);
    auto nonzero_coeff = [&] {
        int c = 0;
        while (c == 0)
            c = coeff(rng);
        return Rational(c);
    };
    // Distribute `deg` over the variables of one block.
    auto block_exponents = [&](int block, int deg, std::vector<int>& e, int base) {
        std::uniform_int_distribution<int> pick(0, blocks[block] - 1);
        for (int t = 0; t < deg; ++t)
            ++e[base + pick(rng)];
    };
    BlockedPolynomial p(blocks);
    // One term of degree exactly `degree` in every block pins the multidegree.
    std::vector<int> top(static_cast<std::size_t>(total_vars(blocks)), 0);
    int base = 0;
    for (int i = 0; i < n; ++i) {
        block_exponents(i, degree, top, base);
        base += blocks[i];
    }
    p.add_term(top, nonzero_coeff());
    // Near-top terms, one per block: with a lone corner term the top parts of
    // all partial derivatives are proportional, which cancels identically in
    // determinants and artificially drops the attained multidegree.
    if (degree >= 1) {
        for (int i = 0; i < n; ++i) {
            std::vector<int> e(static_cast<std::size_t>(total_vars(blocks)), 0);
            base = 0;
            for (int j = 0; j < n; ++j) {
                block_exponents(j, degree - (j == i ? 1 : 0), e, base);
                base += blocks[j];
            }
            p.add_term(e, nonzero_coeff());
        }
    }
    const int extras = extra_terms(rng);
    std::uniform_int_distribution<int> deg_pick(0, degree);
    for (int t = 0; t < extras; ++t) {
        std::vector<int> e(static_cast<std::size_t>(total_vars(blocks)), 0);
        base = 0;
        for (int i = 0; i < n; ++i) {
            block_exponents(i, deg_pick(rng), e, base);
            base += blocks[i];
        }
        p.add_term(e, nonzero_coeff());
    }
    if (p.is_zero())
        p.add_term(top, Rational(1));
    return p;
}

void all_subsets(int n, int size, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

}  // namespace

DetDegReport random_detdeg_suite(const std::vector<int>& block_sizes, int trials,
                                 std::uint64_t seed) {
    const int l = total_vars(block_sizes);
    if (l > 6)
        throw Error("symbolic expansion budget: l <= 6");
    DetDegReport rep;
    rep.trials = trials;
    std::mt19937_64 rng(seed);

    // Multidegree ladder d_m = 2^{l-m}; the product telescopes.
    for (int k = 0; k <= l; ++k) {
        long sum = 0;
        for (int m = k + 1; m <= l; ++m)
            sum += l - m;
        if (sum != static_cast<long>(l - k) * (l - k - 1) / 2)
            rep.ladder_identity_ok = false;
    }

    std::vector<std::vector<std::vector<int>>> col_subsets(static_cast<std::size_t>(l) + 1);
    std::vector<std::vector<std::vector<int>>> row_subsets(static_cast<std::size_t>(l) + 1);
    for (int s = 1; s <= l; ++s) {
        all_subsets(l, s, col_subsets[s]);
        all_subsets(l, s, row_subsets[s]);
    }

    for (int trial = 0; trial < trials; ++trial) {
        IntMatrix alphas = random_alpha(block_sizes, rng);
        std::vector<BlockedPolynomial> f;  // F_1 .. F_l, F_m of multidegree 2^{l-m}
        for (int m = 1; m <= l; ++m)
            f.push_back(random_multidegree_poly(block_sizes, 1 << (l - m), rng));

        bool trial_equality = true;
        for (int k = 1; k <= l; ++k) {
            std::vector<BlockedPolynomial> tail(f.begin() + k, f.end());
            BlockedPolynomial num = jacobian_numerator(block_sizes, alphas, k, tail);
            DetDegTrial t;
            t.k = k;
            t.observed = num.multidegree();
            int tail_sum = 0;
            for (int m = k + 1; m <= l; ++m)
                tail_sum += 1 << (l - m);
            t.bound.assign(block_sizes.size(), 1 + tail_sum);
            for (std::size_t b = 0; b < block_sizes.size(); ++b) {
                if (t.observed[b] > t.bound[b])
                    t.within_bound = false;
                if (t.observed[b] != t.bound[b])
                    t.equality = false;
            }
            if (!t.within_bound)
                ++rep.bound_violations;
            if (!t.equality)
                trial_equality = false;
            rep.details.push_back(std::move(t));
        }
        if (trial_equality)
            ++rep.equality_trials;

        // Every square minor of the phi Jacobian: block degrees <= 1.
        for (int s = 1; s <= l; ++s)
            for (const auto& rows : row_subsets[s])
                for (const auto& cols : col_subsets[s]) {
                    BlockedPolynomial mn =
                        minor_numerator(block_sizes, alphas, MinorSpec{rows, cols});
                    for (int d : mn.multidegree())
                        if (d > 1) {
                            ++rep.minor_violations;
                            goto next_minor;
                        }
                next_minor:;
                }
    }
    rep.equality_rate = trials > 0 ? static_cast<double>(rep.equality_trials) / trials : 0.0;
    return rep;
}

}  // namespace fewnomial
