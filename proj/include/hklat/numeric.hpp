#ifndef HKLAT_NUMERIC_HPP
#define HKLAT_NUMERIC_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hklat {

// Every quantity in the toolkit is exact: integers are arbitrary precision,
// rationals are canonical fractions. No floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
    if (n < 0)
        throw std::invalid_argument("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_even(const Int& n) { return mpz_even_p(n.get_mpz_t()) != 0; }
inline bool is_odd(const Int& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

/// Nonnegative remainder of n mod m (m > 0).
inline Int mod_floor(const Int& n, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline long long to_int64(const Int& v) {
    if (!v.fits_slong_p())
        throw std::overflow_error("integer does not fit in 64 bits: " + v.get_str());
    return v.get_si();
}

inline Int pow_ui(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace hklat

#endif
