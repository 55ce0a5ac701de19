#include "hklat/factor.hpp"

#include <stdexcept>

namespace hklat {

Int Factorization::reconstruct() const {
    Int prod = 1;
    for (const auto& f : factors)
        prod *= pow_ui(f.prime, f.exponent);
    return prod;
}

unsigned Factorization::exponent_of(const Int& p) const {
    for (const auto& f : factors)
        if (f.prime == p)
            return f.exponent;
    return 0;
}

Factorization factorize(const Int& n) {
    if (n <= 0)
        throw std::invalid_argument("factorize: argument must be positive, got " + n.get_str());
    Factorization out;
    out.value = n;
    Int rest = n;

    auto strip = [&rest, &out](const Int& p) {
        unsigned e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++e;
        }
        if (e > 0)
            out.factors.push_back({p, e});
    };

    strip(2);
    strip(3);
    // Remaining prime factors are coprime to 6; step through 6k±1.
    Int q = 5;
    while (q * q <= rest) {
        strip(q);
        q += 2;
        if (q * q > rest)
            break;
        strip(q);
        q += 4;
    }
    if (rest > 1)
        out.factors.push_back({rest, 1});
    return out;
}

bool is_prime(const Int& n) {
    if (n < 2)
        return false;
    if (n < 4)
        return true;
    if (is_even(n) || mpz_divisible_ui_p(n.get_mpz_t(), 3))
        return false;
    Int q = 5;
    while (q * q <= n) {
        if (mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t()))
            return false;
        q += 2;
        if (q * q > n)
            break;
        if (mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t()))
            return false;
        q += 4;
    }
    return true;
}

std::optional<Int> is_perfect_square(const Int& n) {
    if (n < 0)
        return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0)
        return std::nullopt;
    return isqrt(n);
}

Int gcd_all(const std::vector<Int>& values) {
    Int g = 0;
    for (const auto& v : values) {
        g = gcd(g, v);
        if (g == 1)
            break;
    }
    return g;
}

}  // namespace hklat
