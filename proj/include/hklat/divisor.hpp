#ifndef HKLAT_DIVISOR_HPP
#define HKLAT_DIVISOR_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hklat/conditions.hpp"
#include "hklat/lattice.hpp"

namespace hklat {

/// q(y,z) = a*y^2 + 2b*yz + c*z^2.
struct BinaryForm {
    Int a, b, c;

    Int eval(const Int& y, const Int& z) const { return a * y * y + 2 * b * y * z + c * z * z; }
    bool positive_definite() const { return a > 0 && a * c - b * b > 0; }
};

/// q(y,z,w) = a11*y^2 + a22*z^2 + a33*w^2 + a12*yz + a13*yw + a23*zw.
/// Cross coefficients may be odd, so this is the value-level form rather
/// than a half-integer matrix.
struct TernaryForm {
    Int a11, a22, a33, a12, a13, a23;

    Int eval(const Int& y, const Int& z, const Int& w) const {
        return a11 * y * y + a22 * z * z + a33 * w * w + a12 * y * z + a13 * y * w + a23 * z * w;
    }
};

/// A class alpha = x*h^2 + y*S + z*T (+ w*U) together with the induced
/// discriminant d of <h^2, alpha>. gcd of (y, z[, w]) is 1 and d equals the
/// label formula at the coefficients.
struct LabelWitness {
    Int x = 0;
    Int y;
    Int z;
    std::optional<Int> w;
    std::vector<Int> lambdas;  // the lambda values used
    Int d;
};

struct LabelRow {
    Int d;
    Int y, z;
    Int lambda;
};

struct LabelRow4 {
    Int d;
    Int y, z, w;
    Int l12, l13, l23;
};

/// One cell of a residue table: q(y,z) mod p at (y,z) != (0,0).
struct ResidueEntry {
    long y, z;
    long value;
};

struct ModularTable {
    bool nonrepresenting = false;  // q(y,z) != 0 (mod p) on every nonzero residue pair
    std::vector<ResidueEntry> table;  // all p^2 - 1 pairs
    std::optional<std::pair<long, long>> zero_witness;
};

/// Proof object: for every coprime (y,z) the induced label d = content*q(y,z)
/// has odd p-valuation in d/2, so no induced label satisfies the twisted
/// condition.
struct ObstructionCertificate {
    Int d1, d2;
    std::vector<Int> lambdas;  // lambda choices covered (the certificate holds for all)
    Int p;                     // obstructing prime, p == 2 (mod 3)
    Int content;               // content c of the label family d = c*q(y,z)
    unsigned p_valuation = 0;  // v_p(content); odd
    BinaryForm q;              // primitive part; q(y,z) != 0 (mod p) for all nonzero pairs
    std::vector<ResidueEntry> table;
    std::string conclusion;
};

/// Admissible cross-term values for a rank-3 intersection: {-1,+1} when both
/// discriminants are == 2 (mod 6), {0} otherwise. Inputs must satisfy star.
std::vector<Int> lambda_rank3(const Int& d1, const Int& d2);

/// Canonical rank-3 witness Gram containing h^2 = (1,0,0) of square 3:
/// a = 0, s = d1/3 when d1 == 0 (mod 6), else a = 1, s = (d1+1)/3; same for
/// (b,t) from d2; c solves 3c - ab = lambda. Throws when no integral c
/// realizes the requested lambda (the caller retries the other sign).
Lattice gram_rank3(const Int& d1, const Int& d2, const Int& lambda);

/// d = d1*y^2 + 2*lambda*yz + d2*z^2 with gcd(y,z) = 1.
Int label_rank3(const Int& d1, const Int& d2, const Int& lambda, const Int& y, const Int& z);

/// All labels from coprime |y|,|z| <= bound over every admissible lambda,
/// keeping only d satisfying star, deduplicated by d, sorted by d. The
/// retained witness per d is the first in (|y|,|z|)-lexicographic order,
/// positive signs first, lambda ascending.
std::vector<LabelRow> enumerate_labels_rank3(const Int& d1, const Int& d2, long bound);

/// Case-matched rank-4 discriminant. Inputs are canonicalized so that
/// entries == 0 (mod 6) precede entries == 2 (mod 6):
///   no entry == 2 or one entry == 2:  D = d1*d2*d3/9
///   two entries == 2:                 D = (d1*d2*d3 - d1)/9
///   all three == 2:                   D = (d1*d2*d3 - d1 - d2 - d3 - 2)/9
Int disc_rank4(const Int& d1, const Int& d2, const Int& d3);

/// The explicit rank-4 witness Gram for the canonicalized inputs, with
/// n_i = d_i/6 or (d_i-2)/6 per residue class. determinant == disc_rank4.
Lattice gram_rank4(const Int& d1, const Int& d2, const Int& d3);

/// d = d1*y^2 + d2*z^2 + d3*w^2 + 2*(l12*yz + l13*yw + l23*zw), with
/// gcd(y,z,w) = 1 and each l consistent with the residue table (0 unless
/// both corresponding d_i == 2 (mod 6), then +-1).
Int label_rank4(const Int& d1, const Int& d2, const Int& d3, const Int& l12, const Int& l13,
                const Int& l23, const Int& y, const Int& z, const Int& w);

/// Rank-4 analogue of enumerate_labels_rank3 over coprime |y|,|z|,|w| <= bound
/// and all admissible lambda triples.
std::vector<LabelRow4> enumerate_labels_rank4(const Int& d1, const Int& d2, const Int& d3,
                                              long bound);

/// Exact decision: does the positive definite q represent N? Complete search
/// inside the discriminant bounds y^2 <= N*c/(ac-b^2), z^2 <= N*a/(ac-b^2).
/// With coprime=true only gcd(y,z)=1 witnesses count.
std::optional<std::pair<Int, Int>> represents(const BinaryForm& q, const Int& N, bool coprime);

/// Checks q(y,z) != 0 (mod p) for every (y,z) in {0..p-1}^2 \ {(0,0)} and
/// returns the full residue table. For coprime integer pairs the residue pair
/// is never (0,0), so nonrepresentation implies p never divides q(y,z).
/// The explicit table limits p to 1024.
ModularTable modular_nonrepresentation(const BinaryForm& q, const Int& p);

/// Searches for a single-prime obstruction: an odd prime p == 2 (mod 3)
/// dividing the content of the label family to odd order with
/// q(y,z) != 0 (mod p) on nonzero residues, valid for every lambda choice
/// simultaneously. Absence of a certificate is not a claim that some label
/// satisfies the twisted condition.
std::optional<ObstructionCertificate> twisted_obstruction(const Int& d1, const Int& d2);

/// Nontrivial zero of a ternary quadratic form mod p, by exhaustive search
/// over the p^3 - 1 nonzero residue triples (guaranteed to exist: a quadratic
/// in three variables always has one). Exhaustion signals a bug, not bad
/// input. The cubic scan limits p to 521.
struct ChevalleyZero {
    Int y, z, w;
};
ChevalleyZero chevalley_solve(const TernaryForm& q, const Int& p);

/// First (minimal-d) rank-4 label satisfying the twisted condition, within
/// the coprime box |y|,|z|,|w| <= bound. Absence within the bound is reported
/// as "not found", never as nonexistence.
std::optional<LabelWitness> twisted_label_search(const Int& d1, const Int& d2, const Int& d3,
                                                 long bound);

/// k*d for a perfect square k >= 1 and star-satisfying d: divisor membership
/// transfers along perfect-square scalings.
Int square_scale(const Int& d, const Int& k);

/// Algebraicity index 2^rank / |det| as an exact rational. Rejects
/// degenerate lattices.
Rat kappa(const Lattice& L);

// Named fixtures.
Lattice fixture_two_planes();                    // [[3,1,1],[1,3,0],[1,0,3]]
Lattice fixture_veronese_scroll();               // [[3,3,4],[3,7,4],[4,4,12]]
Lattice fixture_veronese_c60(const Int& k);      // [[3,4,3k],[4,12,4k],[3k,4k,3k^2+20]]

/// The 20/44 worked example: the quoted d values drop the forced cross term
/// 2*lambda*y*z (lambda = +-1 since 20 == 44 == 2 (mod 6)); the formula gives
/// {62,66} at (1,1) and {410,422} at (1,3). Both readings are reported.
struct Example2044 {
    Int d1 = 20, d2 = 44;
    Int quoted_d_11 = 64;
    Int quoted_d_13 = 416;
    std::vector<Int> consistent_d_11;  // {62, 66}
    std::vector<Int> consistent_d_13;  // {410, 422}
};
Example2044 fixture_ex_20_44();

}  // namespace hklat

#endif
