#include "hklat/conditions.hpp"

#include <stdexcept>

namespace hklat {

bool cond_star(const Int& d) {
    if (d <= 6)
        return false;
    const Int r = mod_floor(d, 6);
    return r == 0 || r == 2;
}

HilbResult cond_hilb(const Int& d, const Int& a_max) {
    if (d < 1)
        throw std::invalid_argument("cond_hilb: d must be positive");
    if (a_max < 1)
        throw std::invalid_argument("cond_hilb: a_max must be positive");
    HilbResult res;
    res.a_max = a_max;
    for (Int a = 1; a <= a_max; ++a) {
        // 2k^2 + 2k + (2 - d*a^2) = 0 has integer k iff 2*d*a^2 - 3 is a
        // perfect square; the root is odd automatically.
        const Int disc = 2 * d * a * a - 3;
        const auto root = is_perfect_square(disc);
        if (!root)
            continue;
        const Int k = (*root - 1) / 2;
        if (2 * k * k + 2 * k + 2 != d * a * a)
            throw std::logic_error("cond_hilb: witness failed verification");
        res.satisfied = true;
        res.witness = HilbWitness{k, a};
        return res;
    }
    return res;
}

bool cond_moduli(const Int& d) {
    if (d < 1)
        throw std::invalid_argument("cond_moduli: d must be positive");
    if (mpz_divisible_ui_p(d.get_mpz_t(), 4) || mpz_divisible_ui_p(d.get_mpz_t(), 9))
        return false;
    for (const auto& f : factorize(d).factors) {
        if (f.prime == 2)
            continue;
        if (mod_floor(f.prime, 3) == 2)
            return false;
    }
    return true;
}

bool cond_twisted(const Int& d) {
    if (d < 2 || is_odd(d))
        return false;
    for (const auto& f : factorize(d / 2).factors)
        if (mod_floor(f.prime, 3) == 2 && f.exponent % 2 == 1)
            return false;
    return true;
}

bool cond_dagger(const Int& d) {
    return cond_star(d) && !cond_twisted(d);
}

ConditionVerdict verdict(const Int& d, const Int& a_max) {
    if (d < 1)
        throw std::invalid_argument("verdict: d must be positive");
    ConditionVerdict v;
    v.d = d;
    v.star = cond_star(d);
    v.hilb = cond_hilb(d, a_max);
    v.moduli = cond_moduli(d);
    v.twisted = cond_twisted(d);
    v.dagger = v.star && !v.twisted;
    if (is_even(d) && d >= 2)
        v.half = factorize(d / 2);
    else
        v.note = "d is odd: d/2 is not an integer and the twisted condition is false by convention";
    return v;
}

}  // namespace hklat
