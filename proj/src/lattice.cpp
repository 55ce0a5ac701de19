#include "hklat/lattice.hpp"

#include <stdexcept>
#include <utility>

namespace hklat {

namespace {

// Bareiss fraction-free elimination with row pivoting; every division is
// exact. Entries stay minors of the (row-permuted) input matrix.
Int det_bareiss(std::vector<Int> m, int n) {
    if (n == 0)
        return 1;
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[static_cast<size_t>(k) * n + k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[static_cast<size_t>(i) * n + k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0)
                return 0;
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<size_t>(k) * n + j], m[static_cast<size_t>(piv) * n + j]);
            sign = -sign;
        }
        const Int pivot = m[static_cast<size_t>(k) * n + k];
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = m[static_cast<size_t>(i) * n + j] * pivot -
                        m[static_cast<size_t>(i) * n + k] * m[static_cast<size_t>(k) * n + j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[static_cast<size_t>(i) * n + j] = t;
            }
        prev = pivot;
    }
    Int d = m[static_cast<size_t>(n - 1) * n + (n - 1)];
    if (sign < 0)
        d = -d;
    return d;
}

}  // namespace

Lattice::Lattice(int rank, std::vector<Int> entries, bool allow_degenerate)
    : rank_(rank), gram_(std::move(entries)) {
    if (rank_ <= 0)
        throw std::invalid_argument("lattice rank must be positive");
    if (gram_.size() != static_cast<size_t>(rank_) * rank_)
        throw std::invalid_argument("gram matrix entry count does not match rank");
    for (int i = 0; i < rank_; ++i)
        for (int j = i + 1; j < rank_; ++j)
            if (gram(i, j) != gram(j, i))
                throw std::invalid_argument("gram matrix is not symmetric");
    det_ = det_bareiss(gram_, rank_);
    if (det_ == 0 && !allow_degenerate)
        throw std::invalid_argument("gram matrix is degenerate (zero determinant)");
}

Lattice Lattice::from_gram(int rank, std::vector<Int> entries) {
    return Lattice(rank, std::move(entries), false);
}

Lattice Lattice::from_rows(const std::vector<std::vector<Int>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<Int> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("gram rows must be square");
        for (const auto& e : row)
            flat.push_back(e);
    }
    return from_gram(n, std::move(flat));
}

Signature Lattice::signature() const {
    const int n = rank_;
    std::vector<Rat> m(static_cast<size_t>(n) * n);
    for (size_t i = 0; i < m.size(); ++i)
        m[i] = Rat(gram_[i]);
    auto at = [&m, n](int i, int j) -> Rat& { return m[static_cast<size_t>(i) * n + j]; };
    auto swap_basis = [&](int a, int b) {
        if (a == b)
            return;
        for (int j = 0; j < n; ++j)
            std::swap(at(a, j), at(b, j));
        for (int i = 0; i < n; ++i)
            std::swap(at(i, a), at(i, b));
    };

    Signature sig;
    for (int i = 0; i < n; ++i) {
        if (at(i, i) == 0) {
            int jdiag = -1;
            for (int j = i + 1; j < n; ++j)
                if (at(j, j) != 0) {
                    jdiag = j;
                    break;
                }
            if (jdiag >= 0) {
                swap_basis(i, jdiag);
            } else {
                // Trailing diagonal is all zero. If some off-diagonal entry
                // survives, e_a += e_b turns 2*m[a][b] up on the diagonal
                // (the hyperbolic split); otherwise the block is zero.
                int a = -1, b = -1;
                for (int r = i; r < n && a < 0; ++r)
                    for (int c = r + 1; c < n; ++c)
                        if (at(r, c) != 0) {
                            a = r;
                            b = c;
                            break;
                        }
                if (a < 0) {
                    sig.zero += n - i;
                    break;
                }
                for (int j = 0; j < n; ++j)
                    at(a, j) += at(b, j);
                for (int r = 0; r < n; ++r)
                    at(r, a) += at(r, b);
                swap_basis(i, a);
            }
        }
        const Rat pivot = at(i, i);
        if (pivot > 0)
            ++sig.positive;
        else
            ++sig.negative;
        // Schur complement of the pivot; symmetry is preserved.
        for (int r = i + 1; r < n; ++r) {
            if (at(r, i) == 0)
                continue;
            const Rat f = at(r, i) / pivot;
            for (int c = i; c < n; ++c)
                at(r, c) -= f * at(i, c);
            at(r, i) = 0;
        }
        for (int c = i + 1; c < n; ++c)
            at(i, c) = 0;
    }
    return sig;
}

Int pairing(const Lattice& L, const Vec& u, const Vec& v) {
    const int n = L.rank();
    if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
        throw std::invalid_argument("pairing: coordinate length does not match lattice rank");
    Int acc = 0;
    for (int i = 0; i < n; ++i) {
        if (u[i] == 0)
            continue;
        Int row = 0;
        for (int j = 0; j < n; ++j)
            row += L.gram(i, j) * v[j];
        acc += u[i] * row;
    }
    return acc;
}

static bool all_zero(const Vec& v) {
    for (const auto& c : v)
        if (c != 0)
            return false;
    return true;
}

Int divisibility(const Lattice& L, const Vec& v) {
    if (static_cast<int>(v.size()) != L.rank())
        throw std::invalid_argument("divisibility: coordinate length does not match lattice rank");
    if (all_zero(v))
        throw std::invalid_argument("divisibility: zero vector");
    Int g = 0;
    for (int i = 0; i < L.rank(); ++i) {
        Int p = 0;
        for (int j = 0; j < L.rank(); ++j)
            p += L.gram(i, j) * v[j];
        g = gcd(g, p);
    }
    return g;
}

bool is_primitive(const Vec& v) {
    if (all_zero(v))
        throw std::invalid_argument("is_primitive: zero vector");
    Int g = 0;
    for (const auto& c : v)
        g = gcd(g, c);
    return g == 1;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    const int n = a.rank() + b.rank();
    std::vector<Int> entries(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j)
            entries[static_cast<size_t>(i) * n + j] = a.gram(i, j);
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j)
            entries[static_cast<size_t>(a.rank() + i) * n + (a.rank() + j)] = b.gram(i, j);
    return Lattice::from_gram(n, std::move(entries));
}

Lattice rescale(const Lattice& L, const Int& k) {
    if (k == 0)
        throw std::invalid_argument("rescale: k must be nonzero");
    std::vector<Int> entries = L.entries();
    for (auto& e : entries)
        e *= k;
    return Lattice::from_gram(L.rank(), std::move(entries));
}

Lattice sublattice_gram(const Lattice& L, const std::vector<Vec>& vectors) {
    if (vectors.empty())
        throw std::invalid_argument("sublattice_gram: need at least one vector");
    const int n = static_cast<int>(vectors.size());
    std::vector<Int> entries(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Int p = pairing(L, vectors[i], vectors[j]);
            entries[static_cast<size_t>(i) * n + j] = p;
            entries[static_cast<size_t>(j) * n + i] = p;
        }
    return Lattice(n, std::move(entries), true);
}

Int label_discriminant(const Lattice& L, const Vec& h, const Vec& alpha) {
    const Int hh = pairing(L, h, h);
    const Int ha = pairing(L, h, alpha);
    const Int aa = pairing(L, alpha, alpha);
    return hh * aa - ha * ha;
}

Lattice lattice_U() {
    return Lattice::from_rows({{0, 1}, {1, 0}});
}

Lattice lattice_A2() {
    return Lattice::from_rows({{2, -1}, {-1, 2}});
}

Lattice lattice_E8() {
    // Simple-root Gram of the even positive definite E8 root lattice:
    // chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
    return Lattice::from_rows({
        {2, 0, -1, 0, 0, 0, 0, 0},
        {0, 2, 0, -1, 0, 0, 0, 0},
        {-1, 0, 2, -1, 0, 0, 0, 0},
        {0, -1, -1, 2, -1, 0, 0, 0},
        {0, 0, 0, -1, 2, -1, 0, 0},
        {0, 0, 0, 0, -1, 2, -1, 0},
        {0, 0, 0, 0, 0, -1, 2, -1},
        {0, 0, 0, 0, 0, 0, -1, 2},
    });
}

Lattice lattice_E8_neg() {
    return rescale(lattice_E8(), -1);
}

Lattice lattice_rank1(const Int& m) {
    return Lattice::from_gram(1, {m});
}

Lattice mukai_lattice() {
    Lattice acc = lattice_U();
    for (int i = 0; i < 3; ++i)
        acc = direct_sum(acc, lattice_U());
    acc = direct_sum(acc, lattice_E8_neg());
    return direct_sum(acc, lattice_E8_neg());
}

Lattice k3n_lattice(const Int& n) {
    if (n < 2)
        throw std::invalid_argument("k3n_lattice: n must be at least 2");
    Lattice acc = lattice_U();
    acc = direct_sum(acc, lattice_U());
    acc = direct_sum(acc, lattice_U());
    acc = direct_sum(acc, lattice_E8_neg());
    acc = direct_sum(acc, lattice_E8_neg());
    return direct_sum(acc, lattice_rank1(-(2 * n - 2)));
}

Lattice cubic_H4() {
    const int n = 23;
    std::vector<Int> entries(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i)
        entries[static_cast<size_t>(i) * n + i] = (i < 21) ? 1 : -1;
    return Lattice::from_gram(n, std::move(entries));
}

Lattice cubic_primitive() {
    Lattice acc = lattice_A2();
    acc = direct_sum(acc, lattice_U());
    acc = direct_sum(acc, lattice_U());
    acc = direct_sum(acc, lattice_E8());
    return direct_sum(acc, lattice_E8());
}

}  // namespace hklat
