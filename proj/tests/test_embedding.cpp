#include "doctest.h"

#include <random>

#include "hklat/embedding.hpp"

using namespace hklat;

namespace {

Lattice diag(const std::vector<long>& d) {
    const int n = static_cast<int>(d.size());
    std::vector<Int> e(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i)
        e[static_cast<size_t>(i) * n + i] = d[static_cast<size_t>(i)];
    return Lattice::from_gram(n, std::move(e));
}

// Random even lattice of signature (1, rank-1): even diagonal, small entries.
Lattice random_even_ns(std::mt19937_64& rng, int rank) {
    std::uniform_int_distribution<int> off(-6, 6);
    std::uniform_int_distribution<int> half(-3, 3);
    while (true) {
        std::vector<std::vector<Int>> rows(static_cast<size_t>(rank),
                                           std::vector<Int>(static_cast<size_t>(rank)));
        for (int i = 0; i < rank; ++i)
            for (int j = i; j < rank; ++j) {
                const Int v = (i == j) ? Int(2 * half(rng)) : Int(off(rng));
                rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
                rows[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
            }
        try {
            Lattice L = Lattice::from_rows(rows);
            if (L.signature() == Signature{1, rank - 1, 0})
                return L;
        } catch (const std::invalid_argument&) {
            // degenerate draw; try again
        }
    }
}

}  // namespace

TEST_CASE("build_ambient: construction and validation") {
    const auto amb = build_ambient(diag({2, -2, -2, -2}), 3);
    CHECK(amb.ambient.rank() == 5);
    CHECK(amb.ambient.gram(4, 4) == 4);
    CHECK(amb.ambient.signature() == Signature{2, 3, 0});

    // Rank-1 positive ns is a valid (1,0) input; the ambient is definite.
    const auto small = build_ambient(lattice_rank1(2), 2);
    CHECK(small.ambient.signature() == Signature{2, 0, 0});

    const auto u = build_ambient(lattice_U(), 2);
    CHECK(u.ambient.rank() == 3);

    CHECK_THROWS_AS(build_ambient(lattice_rank1(-2), 2), std::invalid_argument);
    CHECK_THROWS_AS(build_ambient(lattice_U(), 1), std::invalid_argument);
}

TEST_CASE("find_isotropic: worked examples") {
    const auto u = find_isotropic(lattice_U());
    REQUIRE(u.vec.has_value());
    CHECK(*u.vec == Vec{1, 0});
    CHECK(u.final_radius == 1);

    const auto d2 = find_isotropic(diag({2, -2}));
    REQUIRE(d2.vec.has_value());
    CHECK(*d2.vec == Vec{1, 1});

    // x^2 = 2y^2 has no nonzero solution.
    const auto none = find_isotropic(diag({1, -2}));
    CHECK_FALSE(none.vec.has_value());
    CHECK(none.final_radius == 30);

    CHECK_THROWS_AS(find_isotropic(lattice_U(), {2, 1}), std::invalid_argument);
}

TEST_CASE("find_isotropic: hits are primitive, isotropic and sign-normalized") {
    std::mt19937_64 rng(404);
    for (int i = 0; i < 30; ++i) {
        const Lattice ns = random_even_ns(rng, 3);
        const auto amb = build_ambient(ns, 2 + static_cast<long>(rng() % 5));
        const auto got = find_isotropic(amb.ambient);
        if (!got.vec)
            continue;
        CHECK(pairing(amb.ambient, *got.vec, *got.vec) == 0);
        CHECK(is_primitive(*got.vec));
        for (const auto& c : *got.vec) {
            if (c == 0)
                continue;
            CHECK(c > 0);
            break;
        }
    }
}

TEST_CASE("partner_class: worked examples") {
    const auto pu = partner_class(lattice_U(), {1, 0});
    CHECK(pu.k == 1);
    CHECK(pu.F == Vec{0, 1});

    const auto pd = partner_class(diag({2, -2}), {1, 1});
    CHECK(pd.k == 2);
    CHECK(pd.F == Vec{1, 0});

    const auto pr = partner_class(rescale(lattice_U(), 3), {1, 0});
    CHECK(pr.k == 3);
    CHECK(pr.F == Vec{0, 1});

    CHECK_THROWS_AS(partner_class(lattice_U(), {1, 1}), std::invalid_argument);  // not isotropic
    CHECK_THROWS_AS(partner_class(diag({2, -2}), {2, 2}), std::invalid_argument);  // not primitive
}

TEST_CASE("u_embedding: worked examples") {
    const auto cu = u_embedding(lattice_U(), {1, 0});
    CHECK(cu.k == 1);
    CHECK(cu.m == 0);
    CHECK(cu.B == Vec{0, 1});
    CHECK(cu.gram2 == std::array<Int, 4>{0, 1, 1, 0});

    const auto cd = u_embedding(diag({2, -2}), {1, 1});
    CHECK(cd.k == 2);
    CHECK(cd.F == Vec{1, 0});
    CHECK(cd.m == 1);
    CHECK(cd.B == Vec{1, -1});
    CHECK(cd.gram2 == std::array<Int, 4>{0, 4, 4, 0});

    // Odd lattice: F^2 = 1 has no half, rejected with a diagnostic.
    CHECK_THROWS_AS(u_embedding(diag({1, -1}), {1, 1}), std::invalid_argument);

    // Rank-5 ambient of diag(2,-2,-2,-2) with n = 2: any primitive isotropic
    // D pairing as (2,-2,0,0,0) certifies with k = 2.
    const auto amb = build_ambient(diag({2, -2, -2, -2}), 2);
    const auto c5 = u_embedding(amb.ambient, {1, 1, 0, 0, 0});
    CHECK(c5.k == 2);
    CHECK(c5.gram2 == std::array<Int, 4>{0, 4, 4, 0});
}

TEST_CASE("moduli_verdict: worked examples") {
    const auto v1 = moduli_verdict(diag({2, -2, -2, -2}), 2);
    CHECK(v1.kind == ModuliVerdictKind::Certified);
    REQUIRE(v1.certificate.has_value());
    CHECK(v1.certificate->k == 2);
    CHECK(v1.rho_at_least_4);

    const auto v2 = moduli_verdict(lattice_rank1(2), 2);
    CHECK(v2.kind == ModuliVerdictKind::Inconclusive);
    CHECK_FALSE(v2.rho_at_least_4);
    CHECK(v2.ambient_definite);
    CHECK(v2.note.find("rho < 4") != std::string::npos);
    CHECK(v2.note.find("definite") != std::string::npos);

    Lattice ns3 = direct_sum(direct_sum(lattice_U(), lattice_rank1(-2)), lattice_rank1(-4));
    const auto v3 = moduli_verdict(ns3, 2);
    CHECK(v3.kind == ModuliVerdictKind::Certified);
    CHECK(v3.rho_at_least_4);
}

TEST_CASE("certificates re-verify from the ambient Gram alone") {
    std::mt19937_64 rng(1337);
    int certified = 0;
    for (int i = 0; i < 30; ++i) {
        const Lattice ns = random_even_ns(rng, 4);
        const Int n = 2 + static_cast<long>(rng() % 5);
        const auto v = moduli_verdict(ns, n);
        if (v.kind != ModuliVerdictKind::Certified)
            continue;
        ++certified;
        const auto amb = build_ambient(ns, n);
        const auto& c = *v.certificate;
        CHECK(pairing(amb.ambient, c.D, c.D) == 0);
        CHECK(pairing(amb.ambient, c.B, c.B) == 0);
        CHECK(pairing(amb.ambient, c.D, c.B) == c.k * c.k);
        CHECK(is_primitive(c.D));
        CHECK(divisibility(amb.ambient, c.D) == c.k);
        CHECK(pairing(amb.ambient, c.F, c.D) == c.k);
        CHECK(pairing(amb.ambient, c.F, c.F) == 2 * c.m);
    }
    CHECK(certified > 0);
}
