#include "fewnomial/sparse_system.hpp"

#include "fewnomial/lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

namespace fewnomial {

LaurentPolynomial::LaurentPolynomial(int ambient_n) : ambient_n_(ambient_n) {
    if (ambient_n < 1)
        throw Error("ambient dimension must be positive");
}

void LaurentPolynomial::add_term(const ExponentVector& e, const Rational& c) {
    if (static_cast<int>(e.size()) != ambient_n_)
        throw Error("exponent length does not match ambient dimension");
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

Rational LaurentPolynomial::coefficient(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool LaurentPolynomial::has_constant_term() const {
    return terms_.count(ExponentVector(ambient_n_, 0)) != 0;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& other) const {
    LaurentPolynomial out(ambient_n_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : other.terms_) {
            ExponentVector e(ambient_n_);
            for (int m = 0; m < ambient_n_; ++m)
                e[m] = ea[m] + eb[m];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& other) const {
    LaurentPolynomial out = *this;
    for (const auto& [e, c] : other.terms_)
        out.add_term(e, -c);
    return out;
}

LaurentPolynomial LaurentPolynomial::divided_by_monomial(const ExponentVector& e) const {
    LaurentPolynomial out(ambient_n_);
    for (const auto& [et, c] : terms_) {
        ExponentVector shifted(ambient_n_);
        for (int m = 0; m < ambient_n_; ++m)
            shifted[m] = et[m] - e[m];
        out.add_term(shifted, c);
    }
    return out;
}

double LaurentPolynomial::evaluate(const std::vector<double>& x) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c.get_d();
        for (int m = 0; m < ambient_n_; ++m)
            t *= std::pow(x[m], static_cast<double>(e[m]));
        sum += t;
    }
    return sum;
}

double LaurentPolynomial::magnitude(const std::vector<double>& x) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = std::abs(c.get_d());
        for (int m = 0; m < ambient_n_; ++m)
            t *= std::pow(std::abs(x[m]), static_cast<double>(e[m]));
        sum += t;
    }
    return sum;
}

FewnomialSystem parse_system(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& ex) {
        throw Error(std::string("malformed JSON: ") + ex.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("polys"))
        throw Error("system document must contain \"n\" and \"polys\"");
    int n = doc.at("n").get<int>();
    if (n < 1)
        throw Error("n must be positive");
    const auto& polys = doc.at("polys");
    if (!polys.is_array() || static_cast<int>(polys.size()) != n)
        throw Error("non-square system: expected " + std::to_string(n) + " polynomials");

    FewnomialSystem sys;
    sys.n = n;
    for (const auto& p : polys) {
        LaurentPolynomial poly(n);
        if (!p.is_array() || p.empty())
            throw Error("each polynomial must be a non-empty term array");
        for (const auto& term : p) {
            if (!term.contains("e") || !term.contains("c"))
                throw Error("term must contain \"e\" and \"c\"");
            ExponentVector e = term.at("e").get<ExponentVector>();
            if (static_cast<int>(e.size()) != n)
                throw Error("exponent length does not match n");
            Rational c = parse_rational(term.at("c").get<std::string>());
            if (c == 0)
                throw Error("zero coefficient");
            if (poly.coefficient(e) != 0)
                throw Error("duplicate exponent");
            poly.add_term(e, c);
        }
        sys.polynomials.push_back(std::move(poly));
    }
    return sys;
}

std::string serialize_system(const FewnomialSystem& sys) {
    nlohmann::json doc;
    doc["n"] = sys.n;
    doc["polys"] = nlohmann::json::array();
    for (const auto& poly : sys.polynomials) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [e, c] : poly.terms())
            terms.push_back({{"e", e}, {"c", format_rational(c)}});
        doc["polys"].push_back(std::move(terms));
    }
    return doc.dump();
}

FewnomialSystem normalize_constant_terms(const FewnomialSystem& sys) {
    FewnomialSystem out;
    out.n = sys.n;
    for (const auto& poly : sys.polynomials) {
        if (poly.is_zero())
            throw Error("cannot normalize the zero polynomial");
        // Lexicographically smallest monomial present.
        const ExponentVector& pivot = poly.terms().begin()->first;
        out.polynomials.push_back(poly.divided_by_monomial(pivot));
    }
    return out;
}

MixedStructure detect_mixed_structure(const FewnomialSystem& sys) {
    MixedStructure ms;
    ms.n = sys.n;
    const ExponentVector zero(sys.n, 0);
    std::set<ExponentVector> seen;
    for (int i = 0; i < sys.n; ++i) {
        const auto& poly = sys.polynomials[i];
        if (!poly.has_constant_term())
            throw Error("equation " + std::to_string(i + 1) +
                        " has no constant term (call normalize_constant_terms first)");
        std::vector<std::pair<ExponentVector, Rational>> nonconst;
        for (const auto& [e, c] : poly.terms())
            if (e != zero)
                nonconst.emplace_back(e, c);
        if (nonconst.size() < 2)
            throw Error("equation " + std::to_string(i + 1) +
                        " has l_i = 0 (call eliminate_binomials first)");
        for (const auto& [e, c] : nonconst)
            if (!seen.insert(e).second)
                throw Error("shared monomial between equations");

        // Lead monomial: largest total magnitude, lex order breaking ties.
        std::size_t lead_at = 0;
        auto magnitude = [](const ExponentVector& e) {
            long s = 0;
            for (long v : e)
                s += std::labs(v);
            return s;
        };
        for (std::size_t j = 1; j < nonconst.size(); ++j) {
            long a = magnitude(nonconst[j].first), b = magnitude(nonconst[lead_at].first);
            if (a > b || (a == b && nonconst[j].first > nonconst[lead_at].first))
                lead_at = j;
        }
        const auto lead = nonconst[lead_at];
        ms.lead_exponents.push_back(lead.first);
        ms.constant_coeffs.push_back(-poly.coefficient(zero) / lead.second);
        std::vector<ExponentVector> body;
        std::vector<Rational> coeffs;
        for (std::size_t j = 0; j < nonconst.size(); ++j) {
            if (j == lead_at)
                continue;
            body.push_back(nonconst[j].first);
            coeffs.push_back(-nonconst[j].second / lead.second);
        }
        ms.body_exponents.push_back(std::move(body));
        ms.body_coeffs.push_back(std::move(coeffs));
        ms.block_sizes.push_back(static_cast<int>(nonconst.size()) - 1);
    }
    for (int li : ms.block_sizes)
        ms.l += li;
    return ms;
}

FewnomialSystem system_from_structure(const MixedStructure& ms) {
    FewnomialSystem sys;
    sys.n = ms.n;
    const ExponentVector zero(ms.n, 0);
    for (int i = 0; i < ms.n; ++i) {
        LaurentPolynomial poly(ms.n);
        poly.add_term(ms.lead_exponents[i], Rational(-1));
        poly.add_term(zero, ms.constant_coeffs[i]);
        for (int j = 0; j < ms.block_sizes[i]; ++j)
            poly.add_term(ms.body_exponents[i][j], ms.body_coeffs[i][j]);
        sys.polynomials.push_back(std::move(poly));
    }
    return sys;
}

namespace {

// Exact q^(1/root) if it exists in Q.
bool exact_root(const Rational& q, unsigned long root, Rational& out) {
    if (q <= 0)
        return false;
    Integer num_root, den_root;
    int num_exact = mpz_root(num_root.get_mpz_t(), q.get_num().get_mpz_t(), root);
    int den_exact = mpz_root(den_root.get_mpz_t(), q.get_den().get_mpz_t(), root);
    if (!num_exact || !den_exact)
        return false;
    out = Rational(num_root, den_root);
    out.canonicalize();
    return true;
}

Rational rational_power(const Rational& base, long e) {
    if (e == 0)
        return 1;
    Integer num, den;
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), ae);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), ae);
    Rational r(num, den);
    r.canonicalize();
    if (e < 0)
        r = 1 / r;
    return r;
}

// One elimination step: remove the binomial at position `bi`.
FewnomialSystem eliminate_one(const FewnomialSystem& sys, int bi) {
    const int n = sys.n;
    const auto& binom = sys.polynomials[bi];
    auto it = binom.terms().begin();
    const ExponentVector e0 = it->first;
    const Rational c0 = it->second;
    ++it;
    const ExponentVector e1 = it->first;
    const Rational c1 = it->second;
    ExponentVector w(n);
    for (int m = 0; m < n; ++m)
        w[m] = e1[m] - e0[m];

    Rational ratio = -c0 / c1;  // x^w = ratio on the solution set
    if (ratio <= 0)
        throw Error("system has no positive solutions");

    // Unimodular U with U*w = (g, 0, ..., 0); substitute x = s^{U^T}.
    IntMatrix wcol(n, 1);
    for (int m = 0; m < n; ++m)
        wcol.at(m, 0) = w[m];
    auto [h, u] = hermite_normal_form(wcol);
    Integer g = h.at(0, 0);
    if (g == 0)
        throw Error("degenerate constant equation");
    unsigned long gu = g.get_ui();

    Rational root;
    bool have_root = (gu == 1);
    if (have_root)
        root = ratio;
    else
        have_root = exact_root(ratio, gu, root);

    FewnomialSystem out;
    out.n = n - 1;
    for (int i = 0; i < n; ++i) {
        if (i == bi)
            continue;
        LaurentPolynomial poly(n - 1);
        for (const auto& [e, c] : sys.polynomials[i].terms()) {
            // New exponent U*e; drop the first coordinate after fixing s_1.
            std::vector<Integer> ue(n);
            for (int r = 0; r < n; ++r) {
                Integer acc = 0;
                for (int m = 0; m < n; ++m)
                    acc += u.at(r, m) * e[m];
                ue[r] = acc;
            }
            Rational factor;
            long s1exp = ue[0].get_si();
            if (have_root) {
                factor = rational_power(root, s1exp);
            } else if (s1exp % static_cast<long>(gu) == 0) {
                factor = rational_power(ratio, s1exp / static_cast<long>(gu));
            } else {
                throw Error("cannot eliminate binomial exactly: irrational substitution");
            }
            ExponentVector ne(n - 1);
            for (int r = 1; r < n; ++r)
                ne[r - 1] = ue[r].get_si();
            poly.add_term(ne, c * factor);
        }
        if (poly.is_zero())
            throw Error("elimination produced a zero polynomial");
        out.polynomials.push_back(std::move(poly));
    }
    return out;
}

}  // namespace

FewnomialSystem eliminate_binomials(const FewnomialSystem& sys) {
    FewnomialSystem cur = sys;
    bool changed = true;
    while (changed && cur.n >= 2) {
        changed = false;
        for (int i = 0; i < cur.n; ++i) {
            if (cur.polynomials[i].term_count() == 2) {
                cur = eliminate_one(cur, i);
                changed = true;
                break;
            }
        }
    }
    return cur;
}

}  // namespace fewnomial
