#ifndef HKLAT_CONDITIONS_HPP
#define HKLAT_CONDITIONS_HPP

#include <optional>
#include <string>

#include "hklat/factor.hpp"

namespace hklat {

struct HilbWitness {
    Int k;
    Int a;
};

/// Bounded decision for the Hilbert-scheme condition: either a verified
/// witness (k, a) with d*a^2 = 2k^2+2k+2, or "no witness with a <= a_max".
/// A negative answer is never claimed beyond the bound.
struct HilbResult {
    bool satisfied = false;
    std::optional<HilbWitness> witness;
    Int a_max;
};

/// Per-d evaluation of the divisor conditions, with evidence.
struct ConditionVerdict {
    Int d;
    bool star = false;     // d > 6 and d == 0,2 (mod 6)
    HilbResult hilb;       // d = (2k^2+2k+2)/a^2 for some integers k, a
    bool moduli = false;   // d not divisible by 4, 9, or any odd prime p == 2 (mod 3)
    bool twisted = false;  // every prime p == 2 (mod 3) divides d/2 to an even power
    bool dagger = false;   // star holds and twisted fails
    std::optional<Factorization> half;  // factorization of d/2 when d is even and positive
    std::string note;                   // diagnostic, e.g. for odd d
};

/// d > 6 and d == 0 or 2 (mod 6): the discriminant-d divisor is nonempty.
bool cond_star(const Int& d);

/// Scans a in [1, a_max], solving 2k^2+2k+2 = d*a^2 exactly via the
/// discriminant 2*d*a^2 - 3 being a perfect (odd) square. d >= 1.
HilbResult cond_hilb(const Int& d, const Int& a_max = 100);

/// d >= 1; true iff 4, 9 and every odd prime p == 2 (mod 3) avoid d.
bool cond_moduli(const Int& d);

/// Even d >= 2: factors d/2 and requires every prime p == 2 (mod 3),
/// including 2 itself, to occur with even exponent. Odd or nonpositive d
/// yields false (a diagnostic, not an error: totality keeps scans simple).
bool cond_twisted(const Int& d);

/// star AND NOT twisted.
bool cond_dagger(const Int& d);

/// Bundles all predicates with their evidence. d >= 1.
ConditionVerdict verdict(const Int& d, const Int& a_max = 100);

}  // namespace hklat

#endif
