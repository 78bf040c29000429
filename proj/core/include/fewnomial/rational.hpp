#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace fewnomial {

using Rational = mpq_class;
using Integer = mpz_class;

/// Error with a stable category string, used by the CLI to pick exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Parse "p/q" or a plain integer string into a canonical rational.
inline Rational parse_rational(const std::string& s) {
    if (s.empty())
        throw Error("empty rational literal");
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw Error("malformed rational literal: " + s);
    if (q.get_den() == 0)
        throw Error("zero denominator in rational literal: " + s);
    q.canonicalize();
    return q;
}

/// Serialize canonically: integer string when the denominator is 1, else "p/q".
inline std::string format_rational(const Rational& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Integer binomial(unsigned long n, unsigned long k) {
    if (k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer pow2(unsigned long e) {
    Integer r = 1;
    r <<= e;
    return r;
}

}  // namespace fewnomial
