#ifndef HKLAT_LATTICE_HPP
#define HKLAT_LATTICE_HPP

#include <vector>

#include "hklat/numeric.hpp"

namespace hklat {

/// Coordinates of a class in the fixed basis of a lattice.
using Vec = std::vector<Int>;

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;

    bool operator==(const Signature&) const = default;
};

/// A rank-r free Z-module with a symmetric integer Gram matrix. Values are
/// immutable after construction. Nondegeneracy is enforced at construction
/// except for Gram matrices built by sublattice_gram, which may be degenerate
/// and carry the flag.
///
/// The determinant is the raw Gram determinant; callers that care about
/// discriminant sign conventions get both the signed value and its absolute
/// value and decide for themselves.
class Lattice {
public:
    /// Validates symmetry and (unless degeneracy is explicitly permitted)
    /// nonzero determinant. `entries` is row-major rank x rank.
    static Lattice from_gram(int rank, std::vector<Int> entries);
    static Lattice from_rows(const std::vector<std::vector<Int>>& rows);

    int rank() const { return rank_; }
    const Int& gram(int i, int j) const { return gram_[static_cast<size_t>(i) * rank_ + j]; }
    const std::vector<Int>& entries() const { return gram_; }
    bool degenerate() const { return det_ == 0; }

    /// Exact Gram determinant (fraction-free Bareiss elimination).
    const Int& determinant() const { return det_; }

    /// Counts of positive/negative/zero diagonal entries after exact rational
    /// congruence diagonalization. positive + negative + zero == rank.
    Signature signature() const;

private:
    Lattice(int rank, std::vector<Int> entries, bool allow_degenerate);

    int rank_;
    std::vector<Int> gram_;
    Int det_;

    friend Lattice sublattice_gram(const Lattice&, const std::vector<Vec>&);
};

/// u^T * gram * v. Throws on coordinate-length mismatch.
Int pairing(const Lattice& L, const Vec& u, const Vec& v);

/// gcd of the pairings of v with all basis vectors; nonnegative.
/// Rejects the zero vector.
Int divisibility(const Lattice& L, const Vec& v);

/// gcd of the coordinates is 1. Rejects the zero vector.
bool is_primitive(const Vec& v);

Lattice direct_sum(const Lattice& a, const Lattice& b);

/// Entrywise k * gram. Rejects k = 0.
Lattice rescale(const Lattice& L, const Int& k);

/// Gram matrix of pairwise pairings of the given vectors. May be degenerate.
Lattice sublattice_gram(const Lattice& L, const std::vector<Vec>& vectors);

/// Determinant of the 2x2 Gram of (h, alpha): <h,h><a,a> - <h,a>^2.
/// For cubic fourfolds (h^2 of square 3) this is 3*alpha^2 - <h^2,alpha>^2.
Int label_discriminant(const Lattice& L, const Vec& h, const Vec& alpha);

// Standard lattices.
Lattice lattice_U();                   // hyperbolic plane [[0,1],[1,0]]
Lattice lattice_A2();                  // [[2,-1],[-1,2]]
Lattice lattice_E8();                  // even positive definite, det 1
Lattice lattice_E8_neg();              // E8(-1)
Lattice lattice_rank1(const Int& m);   // <m>, m != 0
Lattice mukai_lattice();               // U^4 + E8(-1)^2, signature (4,20), |det| 1
Lattice k3n_lattice(const Int& n);     // U^3 + E8(-1)^2 + <-(2n-2)>, n >= 2
Lattice cubic_H4();                    // (+1)^21 + (-1)^2, odd unimodular
Lattice cubic_primitive();             // A2 + U^2 + E8^2

}  // namespace hklat

#endif
