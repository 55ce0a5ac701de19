#ifndef HKLAT_FACTOR_HPP
#define HKLAT_FACTOR_HPP

#include <optional>
#include <vector>

#include "hklat/numeric.hpp"

namespace hklat {

struct PrimePower {
    Int prime;
    unsigned exponent;
};

/// Prime decomposition of a positive integer. Primes are strictly increasing,
/// exponents >= 1, and the product of prime^exponent reconstructs value.
/// factorize(1) carries an empty factor list.
struct Factorization {
    Int value;
    std::vector<PrimePower> factors;

    Int reconstruct() const;
    unsigned exponent_of(const Int& p) const;  // 0 when p does not occur
};

/// Trial division up to sqrt(n). Inputs are desk-scale; rejects n <= 0.
Factorization factorize(const Int& n);

/// Deterministic primality by trial division.
bool is_prime(const Int& n);

/// The nonnegative square root when n is a perfect square, absent otherwise.
std::optional<Int> is_perfect_square(const Int& n);

/// gcd of all entries; 0 for the empty list and the all-zero list.
Int gcd_all(const std::vector<Int>& values);

}  // namespace hklat

#endif
