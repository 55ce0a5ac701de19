#include "hklat/embedding.hpp"

#include <stdexcept>

#include "hklat/factor.hpp"

namespace hklat {

AmbientAlgebraic build_ambient(const Lattice& ns, const Int& n) {
    if (n < 2)
        throw std::invalid_argument("build_ambient: n must be at least 2");
    const Signature sig = ns.signature();
    if (sig.positive != 1 || sig.zero != 0 || sig.negative != ns.rank() - 1)
        throw std::invalid_argument("build_ambient: ns must have signature (1, rank-1)");
    Lattice ambient = direct_sum(ns, lattice_rank1(2 * n - 2));
    return {ns, n, std::move(ambient)};
}

std::vector<long> default_radius_schedule() {
    return {1, 2, 4, 8, 16, 30};
}

namespace {

// Integer roots of A*t^2 + B*t + C = 0, ascending.
std::vector<Int> quadratic_roots(const Int& A, const Int& B, const Int& C, long radius) {
    std::vector<Int> roots;
    if (A == 0) {
        if (B == 0) {
            if (C == 0)
                for (long t = -radius; t <= radius; ++t)
                    roots.push_back(t);
            return roots;
        }
        if (mpz_divisible_p(C.get_mpz_t(), B.get_mpz_t())) {
            const Int t = -C / B;
            if (abs(t) <= radius)
                roots.push_back(t);
        }
        return roots;
    }
    const Int disc = B * B - 4 * A * C;
    const auto s = is_perfect_square(disc);
    if (!s)
        return roots;
    for (int pick = 0; pick < (disc == 0 ? 1 : 2); ++pick) {
        const Int num = pick == 0 ? Int(-B - *s) : Int(-B + *s);
        const Int den = 2 * A;
        if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
            continue;
        const Int t = num / den;
        if (abs(t) <= radius)
            roots.push_back(t);
    }
    if (roots.size() == 2 && roots[0] > roots[1])
        std::swap(roots[0], roots[1]);
    return roots;
}

struct BoxSearch {
    const Lattice& L;
    long radius;
    Vec prefix;
    std::optional<Vec> hit;

    // Enumerates prefixes in box-lexicographic order (each coordinate
    // ascending from -radius) and solves for the last coordinate, so the
    // first hit is the lexicographic minimum of the whole box.
    // sums[j] carries sum_{i<level} prefix[i]*G[i][j]; qacc the pairing of
    // the prefix with itself.
    bool descend(int level, const std::vector<Int>& sums, const Int& qacc) {
        const int n = L.rank();
        if (level == n - 1) {
            const Int& A = L.gram(n - 1, n - 1);
            const Int B = 2 * sums[n - 1];
            bool prefix_zero = true;
            for (const auto& c : prefix)
                if (c != 0) {
                    prefix_zero = false;
                    break;
                }
            for (const auto& t : quadratic_roots(A, B, qacc, radius)) {
                if (prefix_zero && t == 0)
                    continue;
                Vec v = prefix;
                v.push_back(t);
                hit = std::move(v);
                return true;
            }
            return false;
        }
        for (long t = -radius; t <= radius; ++t) {
            prefix.push_back(t);
            Int q2 = qacc + 2 * t * sums[level] + t * t * L.gram(level, level);
            std::vector<Int> s2 = sums;
            for (int j = level + 1; j < n; ++j)
                s2[j] += t * L.gram(level, j);
            if (descend(level + 1, s2, q2))
                return true;
            prefix.pop_back();
        }
        return false;
    }
};

Vec normalize_hit(Vec v) {
    Int g = 0;
    for (const auto& c : v)
        g = gcd(g, c);
    if (g > 1)
        for (auto& c : v)
            c /= g;
    for (const auto& c : v) {
        if (c == 0)
            continue;
        if (c < 0)
            for (auto& e : v)
                e = -e;
        break;
    }
    return v;
}

}  // namespace

IsotropicSearch find_isotropic(const Lattice& L, const std::vector<long>& radius_schedule) {
    if (radius_schedule.empty())
        throw std::invalid_argument("find_isotropic: empty radius schedule");
    long prev = 0;
    for (long r : radius_schedule) {
        if (r <= prev)
            throw std::invalid_argument("find_isotropic: radius schedule must be strictly increasing and positive");
        prev = r;
    }
    IsotropicSearch out;
    for (long r : radius_schedule) {
        out.final_radius = r;
        BoxSearch search{L, r, {}, std::nullopt};
        search.prefix.reserve(static_cast<size_t>(L.rank()));
        std::vector<Int> sums(static_cast<size_t>(L.rank()), Int(0));
        if (search.descend(0, sums, Int(0))) {
            out.vec = normalize_hit(*search.hit);
            return out;
        }
    }
    return out;
}

Partner partner_class(const Lattice& L, const Vec& D) {
    if (pairing(L, D, D) != 0)
        throw std::invalid_argument("partner_class: D is not isotropic");
    if (!is_primitive(D))
        throw std::invalid_argument("partner_class: D is not primitive");
    const int n = L.rank();
    std::vector<Int> w(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Int p = 0;
        for (int j = 0; j < n; ++j)
            p += L.gram(i, j) * D[j];
        w[static_cast<size_t>(i)] = p;
    }
    const Int k = divisibility(L, D);
    if (k == 0)
        throw std::invalid_argument("partner_class: D pairs to zero with the whole lattice");

    Vec coeff(static_cast<size_t>(n), Int(0));
    int i0 = 0;
    while (w[static_cast<size_t>(i0)] == 0)
        ++i0;
    Int g = abs(w[static_cast<size_t>(i0)]);
    coeff[static_cast<size_t>(i0)] = w[static_cast<size_t>(i0)] > 0 ? 1 : -1;
    for (int j = i0 + 1; j < n && g != k; ++j) {
        const Int& wj = w[static_cast<size_t>(j)];
        if (wj == 0 || mpz_divisible_p(wj.get_mpz_t(), g.get_mpz_t()))
            continue;
        Int gnew, u, v;
        mpz_gcdext(gnew.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t(), wj.get_mpz_t());
        for (auto& c : coeff)
            c *= u;
        coeff[static_cast<size_t>(j)] = v;
        g = gnew;
    }
    if (pairing(L, coeff, D) != k)
        throw std::logic_error("partner_class: construction failed to realize the divisibility");
    return {coeff, k};
}

UEmbeddingCertificate u_embedding(const Lattice& L, const Vec& D) {
    auto [F, k] = partner_class(L, D);
    const Int F2 = pairing(L, F, F);
    if (is_odd(F2))
        throw std::invalid_argument("u_embedding: F^2 = " + F2.get_str() +
                                    " is odd; the lattice is not even, no hyperbolic basis of this shape");
    const Int m = F2 / 2;
    Vec B(D.size());
    for (size_t i = 0; i < D.size(); ++i)
        B[i] = -m * D[i] + k * F[i];
    UEmbeddingCertificate cert;
    cert.D = D;
    cert.k = k;
    cert.F = F;
    cert.m = m;
    cert.B = B;
    cert.gram2 = {pairing(L, D, D), pairing(L, D, B), pairing(L, B, D), pairing(L, B, B)};
    const Int k2 = k * k;
    if (cert.gram2[0] != 0 || cert.gram2[3] != 0 || cert.gram2[1] != k2 || cert.gram2[2] != k2)
        throw std::logic_error("u_embedding: certificate Gram is not [[0,k^2],[k^2,0]]");
    return cert;
}

ModuliVerdict moduli_verdict(const Lattice& ns, const Int& n,
                             const std::vector<long>& radius_schedule) {
    const AmbientAlgebraic amb = build_ambient(ns, n);
    ModuliVerdict v;
    v.rho_at_least_4 = ns.rank() >= 4;
    const Signature sig = amb.ambient.signature();
    v.ambient_definite = sig.positive == 0 || sig.negative == 0;
    const IsotropicSearch search = find_isotropic(amb.ambient, radius_schedule);
    v.final_radius = search.final_radius;
    if (search.vec) {
        v.kind = ModuliVerdictKind::Certified;
        v.certificate = u_embedding(amb.ambient, *search.vec);
        v.note = "twisted-moduli (certified)";
        return v;
    }
    v.kind = ModuliVerdictKind::Inconclusive;
    std::string note = "inconclusive: no isotropic vector within radius " + std::to_string(search.final_radius);
    if (!v.rho_at_least_4)
        note += "; rho < 4, the rank-4 existence guarantee does not apply";
    if (v.ambient_definite)
        note += "; ambient lattice is definite, only the zero vector is isotropic";
    v.note = note;
    return v;
}

}  // namespace hklat
