#ifndef HKLAT_EMBEDDING_HPP
#define HKLAT_EMBEDDING_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hklat/lattice.hpp"

namespace hklat {

/// The algebraic ambient lattice NS + <2n-2>: the new generator sits last in
/// the basis. The genuine algebraic part of the big even unimodular lattice
/// may be a finite-index overlattice of this direct sum; an overlattice only
/// adds isotropic vectors, so every certificate found here remains valid.
struct AmbientAlgebraic {
    Lattice ns;
    Int n;
    Lattice ambient;
};

/// Requires n >= 2 and signature(ns) = (1, rank-1, 0).
AmbientAlgebraic build_ambient(const Lattice& ns, const Int& n);

std::vector<long> default_radius_schedule();  // {1, 2, 4, 8, 16, 30}

/// Box search for a primitive isotropic vector, escalating through the radius
/// schedule. The reported vector is the lexicographically first hit in the
/// successful box (coordinates scanned ascending from -r), divided by its
/// coordinate gcd and sign-normalized so the first nonzero coordinate is
/// positive. Absence is a value: the schedule ran out at final_radius.
struct IsotropicSearch {
    std::optional<Vec> vec;
    long final_radius = 0;
};
IsotropicSearch find_isotropic(const Lattice& L,
                               const std::vector<long>& radius_schedule = default_radius_schedule());

/// A partner class F with <F,D> = k = div(D), built by left-to-right
/// extended-gcd folding over the basis pairings of D (minimal Bezout pairs,
/// stopping once the running gcd reaches k).
struct Partner {
    Vec F;
    Int k;
};
Partner partner_class(const Lattice& L, const Vec& D);

/// Verified twisted hyperbolic plane: with m = F^2/2 and B = -m*D + k*F the
/// pair (D, B) has Gram [[0, k^2], [k^2, 0]].
struct UEmbeddingCertificate {
    Vec D;   // primitive isotropic
    Int k;   // divisibility of D
    Vec F;   // <F,D> = k
    Int m;   // F^2 = 2m (m may be negative)
    Vec B;   // -m*D + k*F
    std::array<Int, 4> gram2;
};

/// Requires D primitive isotropic and F^2 even (automatic in an even
/// lattice); rejects odd F^2 with a diagnostic.
UEmbeddingCertificate u_embedding(const Lattice& L, const Vec& D);

enum class ModuliVerdictKind { Certified, Inconclusive };

/// Outcome of the twisted-moduli test on NS + <2n-2>. Certified carries a
/// verified certificate; Inconclusive only reports "no isotropic vector
/// within the final radius", never a nonexistence claim.
struct ModuliVerdict {
    ModuliVerdictKind kind = ModuliVerdictKind::Inconclusive;
    std::optional<UEmbeddingCertificate> certificate;
    long final_radius = 0;
    bool rho_at_least_4 = false;  // rank(ns) >= 4 guarantees an isotropic class exists
    bool ambient_definite = false;
    std::string note;
};

ModuliVerdict moduli_verdict(const Lattice& ns, const Int& n,
                             const std::vector<long>& radius_schedule = default_radius_schedule());

}  // namespace hklat

#endif
