#ifndef BKLAB_RATIONAL_HPP
#define BKLAB_RATIONAL_HPP

// Exact arithmetic layer. GMP's C++ bindings carry all expansion
// coefficients; nothing downstream of an exact pipeline is allowed to touch
// floating point until evaluation time.

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace bklab {

using Integer = mpz_class;
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }

// Natural log of |x|, valid far beyond double range.
inline double log_abs(const Integer& x) {
    if (x == 0) throw std::domain_error("log_abs of zero");
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
    return std::log(std::abs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

inline double log_abs(const Rational& q) {
    return log_abs(Integer(q.get_num())) - log_abs(Integer(q.get_den()));
}

// Canonical "p" or "p/q" rendering (exact round trip).
inline std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("rational_from_string: cannot parse '" + s + "'");
    q.canonicalize();
    return q;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer pow_integer(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace bklab

#endif  // BKLAB_RATIONAL_HPP
