#include "fewnomial/blocked_poly.hpp"

#include <algorithm>
#include <numeric>

namespace fewnomial {

BlockedPolynomial::BlockedPolynomial(std::vector<int> block_sizes)
    : block_sizes_(std::move(block_sizes)),
      nvars_(std::accumulate(block_sizes_.begin(), block_sizes_.end(), 0)) {
    if (block_sizes_.empty())
        throw Error("blocked polynomial needs at least one block");
    for (int b : block_sizes_)
        if (b < 1)
            throw Error("block sizes must be positive");
}

BlockedPolynomial BlockedPolynomial::constant(std::vector<int> block_sizes, const Rational& c) {
    BlockedPolynomial p(std::move(block_sizes));
    p.add_term(Exponents(static_cast<std::size_t>(p.nvars_), 0), c);
    return p;
}

BlockedPolynomial BlockedPolynomial::variable(std::vector<int> block_sizes, int flat_var) {
    BlockedPolynomial p(std::move(block_sizes));
    Exponents e(static_cast<std::size_t>(p.nvars_), 0);
    e.at(static_cast<std::size_t>(flat_var)) = 1;
    p.add_term(e, Rational(1));
    return p;
}

BlockedPolynomial BlockedPolynomial::q_polynomial(std::vector<int> block_sizes, int block) {
    BlockedPolynomial p(std::move(block_sizes));
    p.add_term(Exponents(static_cast<std::size_t>(p.nvars_), 0), Rational(1));
    int base = 0;
    for (int t = 0; t < block; ++t)
        base += p.block_sizes_[t];
    for (int j = 0; j < p.block_sizes_[block]; ++j) {
        Exponents e(static_cast<std::size_t>(p.nvars_), 0);
        e[base + j] = 1;
        p.add_term(e, Rational(1));
    }
    return p;
}

void BlockedPolynomial::add_term(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars_)
        throw Error("exponent length does not match variable count");
    if (c == 0)
        return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

BlockedPolynomial BlockedPolynomial::operator+(const BlockedPolynomial& o) const {
    BlockedPolynomial out = *this;
    for (const auto& [e, c] : o.terms_)
        out.add_term(e, c);
    return out;
}

BlockedPolynomial BlockedPolynomial::operator-(const BlockedPolynomial& o) const {
    BlockedPolynomial out = *this;
    for (const auto& [e, c] : o.terms_)
        out.add_term(e, -c);
    return out;
}

BlockedPolynomial BlockedPolynomial::operator*(const BlockedPolynomial& o) const {
    BlockedPolynomial out(block_sizes_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(static_cast<std::size_t>(nvars_));
            for (int v = 0; v < nvars_; ++v)
                e[v] = ea[v] + eb[v];
            out.add_term(e, ca * cb);
        }
    return out;
}

BlockedPolynomial BlockedPolynomial::operator*(const Rational& c) const {
    BlockedPolynomial out(block_sizes_);
    if (c == 0)
        return out;
    for (const auto& [e, coeff] : terms_)
        out.terms_.emplace(e, coeff * c);
    return out;
}

BlockedPolynomial BlockedPolynomial::operator-() const {
    return *this * Rational(-1);
}

bool BlockedPolynomial::operator==(const BlockedPolynomial& o) const {
    return terms_ == o.terms_;
}

BlockedPolynomial BlockedPolynomial::derivative(int flat_var) const {
    BlockedPolynomial out(block_sizes_);
    for (const auto& [e, c] : terms_) {
        if (e[flat_var] == 0)
            continue;
        Exponents d = e;
        --d[flat_var];
        out.add_term(d, c * e[flat_var]);
    }
    return out;
}

BlockedPolynomial BlockedPolynomial::times_variable(int flat_var) const {
    BlockedPolynomial out(block_sizes_);
    for (const auto& [e, c] : terms_) {
        Exponents m = e;
        ++m[flat_var];
        out.terms_.emplace(m, c);
    }
    return out;
}

BlockedPolynomial BlockedPolynomial::exact_divide(const BlockedPolynomial& divisor) const {
    if (divisor.is_zero())
        throw Error("division by the zero polynomial");
    BlockedPolynomial quotient(block_sizes_);
    BlockedPolynomial rest = *this;
    // Lex leading term of the divisor (last key of the sorted term map).
    const auto& dlead = *divisor.terms_.rbegin();
    while (!rest.is_zero()) {
        const auto& rlead = *rest.terms_.rbegin();
        Exponents q(static_cast<std::size_t>(nvars_));
        bool divisible = true;
        for (int v = 0; v < nvars_; ++v) {
            q[v] = rlead.first[v] - dlead.first[v];
            if (q[v] < 0)
                divisible = false;
        }
        if (!divisible)
            throw Error("non-exact polynomial division (remainder term)");
        Rational qc = rlead.second / dlead.second;
        BlockedPolynomial qt(block_sizes_);
        qt.add_term(q, qc);
        quotient = quotient + qt;
        rest = rest - qt * divisor;
    }
    return quotient;
}

std::vector<int> BlockedPolynomial::multidegree() const {
    std::vector<int> deg(block_sizes_.size(), -1);
    for (const auto& [e, c] : terms_) {
        (void)c;
        int v = 0;
        for (std::size_t b = 0; b < block_sizes_.size(); ++b) {
            int sum = 0;
            for (int j = 0; j < block_sizes_[b]; ++j)
                sum += e[v++];
            deg[b] = std::max(deg[b], sum);
        }
    }
    return deg;
}

BlockedPolynomial det_cofactor(const std::vector<std::vector<BlockedPolynomial>>& m) {
    const std::size_t s = m.size();
    if (s == 0)
        throw Error("determinant of an empty matrix is not represented here");
    if (s == 1)
        return m[0][0];
    const auto& blocks = m[0][0].block_sizes();
    BlockedPolynomial det(blocks);
    for (std::size_t c = 0; c < s; ++c) {
        if (m[0][c].is_zero())
            continue;
        std::vector<std::vector<BlockedPolynomial>> sub;
        for (std::size_t r = 1; r < s; ++r) {
            std::vector<BlockedPolynomial> row;
            for (std::size_t cc = 0; cc < s; ++cc)
                if (cc != c)
                    row.push_back(m[r][cc]);
            sub.push_back(std::move(row));
        }
        BlockedPolynomial term = m[0][c] * det_cofactor(sub);
        if (c % 2 == 0)
            det = det + term;
        else
            det = det - term;
    }
    return det;
}

BlockedPolynomial det_bareiss(const std::vector<std::vector<BlockedPolynomial>>& m) {
    const int s = static_cast<int>(m.size());
    if (s == 0)
        throw Error("determinant of an empty matrix is not represented here");
    const auto& blocks = m[0][0].block_sizes();
    auto a = m;
    BlockedPolynomial prev = BlockedPolynomial::constant(blocks, Rational(1));
    int sign = 1;
    for (int k = 0; k + 1 < s; ++k) {
        if (a[k][k].is_zero()) {
            int swap_row = -1;
            for (int r = k + 1; r < s; ++r)
                if (!a[r][k].is_zero()) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0)
                return BlockedPolynomial(blocks);  // singular
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < s; ++i)
            for (int j = k + 1; j < s; ++j)
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_divide(prev);
        prev = a[k][k];
    }
    BlockedPolynomial det = a[s - 1][s - 1];
    return sign == 1 ? det : -det;
}

}  // namespace fewnomial
