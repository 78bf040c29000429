#include "fewnomial/bounds.hpp"

#include <algorithm>
#include <functional>

namespace fewnomial {

RationalInterval exp_power_enclosure(int power, unsigned terms) {
    if (power == 0)
        return {Rational(1), Rational(1)};
    // e = sum 1/k! with tail below 1/(N! * N).
    Rational s = 0;
    Rational term = 1;
    for (unsigned k = 0; k <= terms; ++k) {
        s += term;
        term /= static_cast<long>(k + 1);
    }
    Rational tail = Rational(1) / (factorial(terms) * static_cast<long>(terms));
    RationalInterval e{s, s + tail};
    RationalInterval out{1, 1};
    for (int i = 0; i < power; ++i) {
        out.lo *= e.lo;
        out.hi *= e.hi;
    }
    return out;
}

namespace {

// Prefactor (e^s + 3)/4 for s in {2, 4}; 1 for s = 0.
RationalInterval prefactor_enclosure(int e_power, unsigned terms) {
    if (e_power == 0)
        return {Rational(1), Rational(1)};
    RationalInterval e = exp_power_enclosure(e_power, terms);
    return {(e.lo + 3) / 4, (e.hi + 3) / 4};
}

}  // namespace

RationalInterval BoundValue::enclosure(unsigned terms) const {
    RationalInterval pre = prefactor_enclosure(e_power, terms);
    Rational base = scalar * Rational(pow2(two_exp)) * Rational(multinomial_factor);
    return {base * pre.lo, base * pre.hi};
}

double BoundValue::value() const {
    RationalInterval enc = enclosure();
    Rational mid = (enc.lo + enc.hi) / 2;
    return mid.get_d();
}

Integer BoundValue::floor() const {
    for (unsigned terms = 48; terms <= 3072; terms *= 2) {
        RationalInterval enc = enclosure(terms);
        Integer flo, fhi;
        mpz_fdiv_q(flo.get_mpz_t(), enc.lo.get_num().get_mpz_t(), enc.lo.get_den().get_mpz_t());
        mpz_fdiv_q(fhi.get_mpz_t(), enc.hi.get_num().get_mpz_t(), enc.hi.get_den().get_mpz_t());
        if (flo == fhi)
            return flo;
    }
    throw Error("bound value suspiciously close to an integer; enclosure did not settle");
}

const BoundEntry* BoundReport::find(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name)
            return &e;
    return nullptr;
}

Integer multinomial(int l, const std::vector<int>& parts) {
    int sum = 0;
    for (int p : parts) {
        if (p < 0)
            throw Error("multinomial parts must be nonnegative");
        sum += p;
    }
    if (sum != l)
        throw Error("multinomial parts do not sum to l");
    Integer r = factorial(static_cast<unsigned long>(l));
    for (int p : parts)
        r /= factorial(static_cast<unsigned long>(p));
    return r;
}

namespace {

Integer int_pow(long base, unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

unsigned long choose2(long m) {
    return m < 2 ? 0ul : static_cast<unsigned long>(m * (m - 1) / 2);
}

// Visit all (j_1..j_n) with 0 <= j_i <= cap_i and sum = target.
void for_each_composition(const std::vector<int>& caps, int target,
                          const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> j(caps.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
        if (i + 1 == caps.size()) {
            if (remaining <= caps[i]) {
                j[i] = remaining;
                fn(j);
            }
            return;
        }
        int hi = std::min(caps[i], remaining);
        for (int v = 0; v <= hi; ++v) {
            j[i] = v;
            rec(i + 1, remaining - v);
        }
    };
    if (!caps.empty() && target >= 0)
        rec(0, target);
}

}  // namespace

BoundValue khovanskii_bound(int n, int l) {
    if (n < 1 || l < 0)
        throw Error("khovanskii_bound requires n >= 1, l >= 0");
    BoundValue b;
    b.scalar = 1;
    b.two_exp = choose2(l + n);
    b.multinomial_factor = int_pow(n + 1, static_cast<unsigned long>(l + n));
    b.e_power = 0;
    return b;
}

BoundValue bs07_positive_bound(int n, int l) {
    if (n < 1 || l < 1)
        throw Error("bs07_positive_bound requires n >= 1, l >= 1");
    BoundValue b;
    b.scalar = 1;
    b.two_exp = choose2(l);
    b.multinomial_factor = int_pow(n, static_cast<unsigned long>(l));
    b.e_power = 2;
    return b;
}

BoundValue bbs_real_bound(int n, int l) {
    BoundValue b = bs07_positive_bound(n, l);
    b.e_power = 4;
    return b;
}

BoundValue mixed_bound(const std::vector<int>& block_sizes, BoundVariant variant) {
    const int n = static_cast<int>(block_sizes.size());
    if (n < 2)
        throw Error("mixed bound requires n >= 2: use Descartes for univariate systems");
    int l = 0;
    for (int li : block_sizes) {
        if (li < 1)
            throw Error("some l_i = 0: eliminate binomials first");
        l += li;
    }
    BoundValue b;
    b.scalar = 1;
    b.two_exp = choose2(l);
    b.multinomial_factor = multinomial(l, block_sizes);
    b.e_power = variant == BoundVariant::Positive ? 2 : 4;
    return b;
}

Integer lrw_bound(int n, int m) {
    if (m < 2 || n < 1)
        throw Error("lrw_bound requires m >= 2, n >= 1");
    Integer sum = 0;
    for (int j = 1; j <= m - 1; ++j)
        sum += int_pow(n, static_cast<unsigned long>(j));
    return sum;
}

Integer avendano_bound(int m) {
    if (m < 2)
        throw Error("avendano_bound requires m >= 2");
    return Integer(6) * m - 4;
}

Integer a_k(const std::vector<int>& block_sizes, int k) {
    int l = 0;
    for (int li : block_sizes)
        l += li;
    if (k < 0 || k > l)
        throw Error("a_k requires 0 <= k <= l");
    Integer sum = 0;
    for_each_composition(block_sizes, l - k, [&](const std::vector<int>& j) {
        Integer term = multinomial(l - k, j);
        for (std::size_t i = 0; i < block_sizes.size(); ++i)
            term *= binomial(static_cast<unsigned long>(block_sizes[i] + 2),
                             static_cast<unsigned long>(j[i] + 2));
        sum += term;
    });
    return sum * pow2(choose2(l - k));
}

Integer bracket_sum(const std::vector<int>& block_sizes, bool full_complement) {
    if (block_sizes.size() < 2)
        throw Error("bracket_sum requires n >= 2");
    int l = 0;
    for (int li : block_sizes) {
        if (li < 1)
            throw Error("bracket_sum requires all l_i >= 1");
        l += li;
    }
    Integer sum = 0;
    for (int k = 1; k <= l; ++k) {
        Integer term = a_k(block_sizes, k);
        if (full_complement)
            term *= pow2(static_cast<unsigned long>(k));
        sum += term;
    }
    return sum;
}

InequalityReport verify_inequalities(const std::vector<int>& block_sizes) {
    if (block_sizes.size() < 2)
        throw Error("verify_inequalities requires n >= 2");
    int l = 0;
    for (int li : block_sizes) {
        if (li < 1)
            throw Error("verify_inequalities requires all l_i >= 1");
        l += li;
    }
    InequalityReport rep;
    const Integer a0 = a_k(block_sizes, 0);

    if (l >= 5) {
        rep.intbound_checked = true;
        for (int k = 1; k <= l; ++k) {
            // a_k <= 2^(k-1)/k! * a_0, cleared to integers.
            Integer lhs = a_k(block_sizes, k) * factorial(static_cast<unsigned long>(k));
            Integer rhs = pow2(static_cast<unsigned long>(k - 1)) * a0;
            if (lhs > rhs) {
                rep.intbound_ok = false;
                rep.intbound_failures.push_back(k);
            }
        }
    }

    if (l >= 3) {
        const Integer full = bracket_sum(block_sizes, true);
        const Integer chamber = bracket_sum(block_sizes, false);
        // Strict comparison against a certified lower bound of e^s; widen the
        // enclosure if the comparison is ambiguous.
        auto check = [&](const Integer& sum, int power) {
            for (unsigned terms = 48; terms <= 3072; terms *= 2) {
                RationalInterval e = exp_power_enclosure(power, terms);
                Rational two_sum = Rational(sum) * 2;
                if (two_sum < (e.lo - 1) * Rational(a0))
                    return true;
                if (two_sum >= (e.hi - 1) * Rational(a0))
                    return false;
            }
            throw Error("inequality check did not settle");
        };
        rep.lemma_ok_real = check(full, 4);
        rep.lemma_ok_chamber = check(chamber, 2);
    }
    return rep;
}

bool multinomial_identity_check(int n, int l) {
    if (n < 1 || l < 0)
        throw Error("multinomial_identity_check requires n >= 1, l >= 0");
    std::vector<int> caps(static_cast<std::size_t>(n), l);
    Integer sum = 0;
    for_each_composition(caps, l, [&](const std::vector<int>& parts) {
        sum += multinomial(l, parts);
    });
    return sum == int_pow(n, static_cast<unsigned long>(l));
}

BoundReport best_bound(const MixedStructure& ms, const IndexInfo& index_info) {
    BoundReport rep;
    rep.n = ms.n;
    rep.block_sizes = ms.block_sizes;
    rep.l = ms.l;
    rep.lattice_index = index_info.index;
    rep.odd_index = index_info.odd;

    auto add = [&](const std::string& name, std::optional<BoundValue> bv, bool applicable,
                   const std::string& reason = "") {
        rep.entries.push_back({name, std::move(bv), applicable, reason});
    };

    add("khovanskii", khovanskii_bound(ms.n, ms.l), true);
    add("bs07_positive", bs07_positive_bound(ms.n, ms.l), true);
    if (index_info.odd)
        add("bbs_real", bbs_real_bound(ms.n, ms.l), true);
    else
        add("bbs_real", std::nullopt, false, "not applicable: trivial sign solutions (even lattice index)");

    const bool mixed_ok = ms.n >= 2;
    if (mixed_ok) {
        add("mixed_positive", mixed_bound(ms.block_sizes, BoundVariant::Positive), true);
        if (index_info.odd)
            add("mixed_real", mixed_bound(ms.block_sizes, BoundVariant::Real), true);
        else
            add("mixed_real", std::nullopt, false,
                "not applicable: trivial sign solutions (even lattice index)");
    } else {
        add("mixed_positive", std::nullopt, false, "n < 2: use Descartes");
        add("mixed_real", std::nullopt, false, "n < 2: use Descartes");
    }

    // LRW applies when all but at most one equation is a trinomial.
    int non_trinomial = 0, max_block = 0;
    for (int li : ms.block_sizes) {
        if (li > 1)
            ++non_trinomial;
        max_block = std::max(max_block, li);
    }
    const bool trinomial_pair = ms.n == 2 && ms.l == 2;
    const bool lrw_ok = non_trinomial <= 1;
    std::optional<Integer> lrw_positive;
    if (trinomial_pair) {
        lrw_positive = 5;  // two trinomials in two variables
        BoundValue bv;
        bv.scalar = 5;
        add("lrw", bv, true);
    } else if (lrw_ok) {
        lrw_positive = lrw_bound(ms.n, max_block + 2);
        BoundValue bv;
        bv.scalar = Rational(*lrw_positive);
        add("lrw", bv, true);
    } else {
        add("lrw", std::nullopt, false, "more than one non-trinomial equation");
    }

    // Operative positive bound: least applicable floor.
    std::optional<Integer> best_pos;
    auto consider = [](std::optional<Integer>& best, const Integer& cand) {
        if (!best || cand < *best)
            best = cand;
    };
    if (mixed_ok)
        consider(best_pos, mixed_bound(ms.block_sizes, BoundVariant::Positive).floor());
    consider(best_pos, bs07_positive_bound(ms.n, ms.l).floor());
    if (lrw_positive)
        consider(best_pos, *lrw_positive);
    rep.operative_positive = *best_pos;

    if (index_info.odd) {
        std::optional<Integer> best_real;
        if (mixed_ok)
            consider(best_real, mixed_bound(ms.block_sizes, BoundVariant::Real).floor());
        consider(best_real, bbs_real_bound(ms.n, ms.l).floor());
        if (trinomial_pair)
            consider(best_real, Integer(20));
        rep.operative_real = best_real;
    }
    return rep;
}

}  // namespace fewnomial
