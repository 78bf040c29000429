#pragma once

#include "fewnomial/rational.hpp"
#include "fewnomial/sparse_system.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fewnomial {

/// Certified rational enclosure [lo, hi].
struct RationalInterval {
    Rational lo, hi;
};

/// Enclosure of e^power (power in {2, 4}) from the exponential series with a
/// tail bound; `terms` controls the width.
RationalInterval exp_power_enclosure(int power, unsigned terms = 48);

/// A bound of the form c * 2^a * M * e^s, kept symbolically so that floors
/// and comparisons are exact.
struct BoundValue {
    Rational scalar;       // c
    unsigned long two_exp = 0;  // a
    Integer multinomial_factor = 1;  // M
    int e_power = 0;       // s in {0, 2, 4}

    double value() const;
    /// floor(c * 2^a * M * e^s), certified via enclosure widening.
    Integer floor() const;
    /// Exact enclosure of the value.
    RationalInterval enclosure(unsigned terms = 48) const;
};

struct BoundEntry {
    std::string name;
    std::optional<BoundValue> bound;
    bool applicable = false;
    std::string reason;  // set when not applicable
};

struct BoundReport {
    int n = 0;
    std::vector<int> block_sizes;
    int l = 0;
    Integer lattice_index = 0;
    bool odd_index = false;
    std::vector<BoundEntry> entries;
    /// Operative bounds after applying overrides and gating.
    Integer operative_positive;
    std::optional<Integer> operative_real;

    const BoundEntry* find(const std::string& name) const;
};

Integer multinomial(int l, const std::vector<int>& parts);

/// 2^binom(l+n,2) * (n+1)^(l+n)
BoundValue khovanskii_bound(int n, int l);
/// (e^2+3)/4 * 2^binom(l,2) * n^l
BoundValue bs07_positive_bound(int n, int l);
/// (e^4+3)/4 * 2^binom(l,2) * n^l
BoundValue bbs_real_bound(int n, int l);

enum class BoundVariant { Positive, Real };

/// (e^2+3)/4 (resp. (e^4+3)/4) * 2^binom(l,2) * multinomial(l; l_1..l_n)
BoundValue mixed_bound(const std::vector<int>& block_sizes, BoundVariant variant);

/// n + n^2 + ... + n^(m-1)
Integer lrw_bound(int n, int m);
/// 6m - 4
Integer avendano_bound(int m);

/// a_k = 2^binom(l-k,2) * sum over compositions j (0<=j_i<=l_i, sum=l-k) of
/// multinomial(l-k; j) * prod binom(l_i+2, j_i+2)
Integer a_k(const std::vector<int>& block_sizes, int k);

/// sum_{k=1}^{l} 2^k a_k (full complement) or sum a_k (single chamber)
Integer bracket_sum(const std::vector<int>& block_sizes, bool full_complement);

struct InequalityReport {
    bool intbound_ok = true;       // a_k <= 2^(k-1)/k! * a_0 for all k (l >= 5)
    bool intbound_checked = false;
    bool lemma_ok_real = false;    // sum 2^k a_k < (e^4-1)/2 * a_0
    bool lemma_ok_chamber = false; // sum a_k < (e^2-1)/2 * a_0
    std::vector<int> intbound_failures;  // offending k values
};

InequalityReport verify_inequalities(const std::vector<int>& block_sizes);

/// Exact check of n^l = sum of multinomials over all compositions with zero
/// parts allowed.
bool multinomial_identity_check(int n, int l);

struct IndexInfo {
    Integer index;
    bool odd = false;
};

BoundReport best_bound(const MixedStructure& ms, const IndexInfo& index_info);

}  // namespace fewnomial
