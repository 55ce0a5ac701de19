#include "hklat/divisor.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace hklat {

namespace {

// Magnitude-lexicographic scan of coprime pairs, positive signs first.
// The first hit under this order is the pinned tie-break winner.
template <typename Fn>
void scan_coprime_pairs(long bound, Fn&& fn) {
    for (long ay = 0; ay <= bound; ++ay)
        for (long az = 0; az <= bound; ++az) {
            if (ay == 0 && az == 0)
                continue;
            if (std::gcd(ay, az) != 1)
                continue;
            for (int sy = 0; sy < (ay == 0 ? 1 : 2); ++sy)
                for (int sz = 0; sz < (az == 0 ? 1 : 2); ++sz)
                    fn(sy ? -ay : ay, sz ? -az : az);
        }
}

template <typename Fn>
void scan_coprime_triples(long bound, Fn&& fn) {
    for (long ay = 0; ay <= bound; ++ay)
        for (long az = 0; az <= bound; ++az)
            for (long aw = 0; aw <= bound; ++aw) {
                if (ay == 0 && az == 0 && aw == 0)
                    continue;
                if (std::gcd(std::gcd(ay, az), aw) != 1)
                    continue;
                for (int sy = 0; sy < (ay == 0 ? 1 : 2); ++sy)
                    for (int sz = 0; sz < (az == 0 ? 1 : 2); ++sz)
                        for (int sw = 0; sw < (aw == 0 ? 1 : 2); ++sw)
                            fn(sy ? -ay : ay, sz ? -az : az, sw ? -aw : aw);
            }
}

void require_star(const Int& d, const char* who) {
    if (!cond_star(d))
        throw std::invalid_argument(std::string(who) + ": " + d.get_str() +
                                    " fails the nonemptiness condition (d > 6, d == 0,2 mod 6)");
}

// Canonical diagonal data for one discriminant: d == 0 (mod 6) gives
// (off, diag) = (0, d/3); d == 2 (mod 6) gives (1, (d+1)/3).
std::pair<Int, Int> canonical_pair(const Int& d) {
    if (mod_floor(d, 6) == 0)
        return {Int(0), d / 3};
    return {Int(1), (d + 1) / 3};
}

}  // namespace

std::vector<Int> lambda_rank3(const Int& d1, const Int& d2) {
    require_star(d1, "lambda_rank3");
    require_star(d2, "lambda_rank3");
    if (mod_floor(d1, 6) == 2 && mod_floor(d2, 6) == 2)
        return {Int(-1), Int(1)};
    return {Int(0)};
}

Lattice gram_rank3(const Int& d1, const Int& d2, const Int& lambda) {
    const auto lams = lambda_rank3(d1, d2);
    if (std::find(lams.begin(), lams.end(), lambda) == lams.end())
        throw std::invalid_argument("gram_rank3: lambda " + lambda.get_str() +
                                    " is not admissible for (" + d1.get_str() + "," + d2.get_str() + ")");
    const auto [a, s] = canonical_pair(d1);
    const auto [b, t] = canonical_pair(d2);
    const Int num = lambda + a * b;  // 3c - ab = lambda
    if (!mpz_divisible_ui_p(num.get_mpz_t(), 3))
        throw std::invalid_argument("gram_rank3: no integral c realizes lambda " + lambda.get_str() +
                                    " with the canonical (a,b); retry the opposite sign");
    const Int c = num / 3;
    return Lattice::from_rows({{3, a, b}, {a, s, c}, {b, c, t}});
}

Int label_rank3(const Int& d1, const Int& d2, const Int& lambda, const Int& y, const Int& z) {
    const auto lams = lambda_rank3(d1, d2);
    if (std::find(lams.begin(), lams.end(), lambda) == lams.end())
        throw std::invalid_argument("label_rank3: inadmissible lambda " + lambda.get_str());
    if (gcd(y, z) != 1)
        throw std::invalid_argument("label_rank3: (y,z) must be coprime");
    const Int d = d1 * y * y + 2 * lambda * y * z + d2 * z * z;
    // Cross-check against the Gram-matrix route. lambda = +1 has no integral
    // canonical Gram, but z -> -z carries it onto the lambda = -1 witness.
    // The result is independent of the h^2 component of alpha.
    const Int lam_g = lambda == 1 ? Int(-1) : lambda;
    const Int z_g = lambda == 1 ? Int(-z) : z;
    const Lattice G = gram_rank3(d1, d2, lam_g);
    for (long x : {0L, 2L})
        if (label_discriminant(G, {1, 0, 0}, {x, y, z_g}) != d)
            throw std::logic_error("label_rank3: formula and Gram discriminant disagree");
    return d;
}

std::vector<LabelRow> enumerate_labels_rank3(const Int& d1, const Int& d2, long bound) {
    if (bound < 1)
        throw std::invalid_argument("enumerate_labels_rank3: bound must be >= 1");
    const auto lams = lambda_rank3(d1, d2);
    std::vector<LabelRow> rows;
    scan_coprime_pairs(bound, [&](long y, long z) {
        for (const auto& lam : lams) {
            const Int d = d1 * y * y + 2 * lam * y * z + d2 * z * z;
            if (cond_star(d))
                rows.push_back({d, Int(y), Int(z), lam});
        }
    });
    std::stable_sort(rows.begin(), rows.end(),
                     [](const LabelRow& a, const LabelRow& b) { return a.d < b.d; });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const LabelRow& a, const LabelRow& b) { return a.d == b.d; }),
               rows.end());
    return rows;
}

namespace {

std::array<Int, 3> canonical_triple(const Int& d1, const Int& d2, const Int& d3) {
    require_star(d1, "rank-4 discriminant");
    require_star(d2, "rank-4 discriminant");
    require_star(d3, "rank-4 discriminant");
    std::array<Int, 3> ds{d1, d2, d3};
    std::stable_partition(ds.begin(), ds.end(),
                          [](const Int& d) { return mod_floor(d, 6) == 0; });
    return ds;
}

}  // namespace

Int disc_rank4(const Int& d1, const Int& d2, const Int& d3) {
    const auto ds = canonical_triple(d1, d2, d3);
    int twos = 0;
    for (const auto& d : ds)
        if (mod_floor(d, 6) == 2)
            ++twos;
    Int num = ds[0] * ds[1] * ds[2];
    if (twos == 2)
        num -= ds[0];
    else if (twos == 3)
        num -= ds[0] + ds[1] + ds[2] + 2;
    if (!mpz_divisible_ui_p(num.get_mpz_t(), 9))
        throw std::logic_error("disc_rank4: case formula is not divisible by 9");
    return num / 9;
}

Lattice gram_rank4(const Int& d1, const Int& d2, const Int& d3) {
    const auto ds = canonical_triple(d1, d2, d3);
    std::array<Int, 3> n;
    std::array<bool, 3> two{};
    for (int i = 0; i < 3; ++i) {
        two[i] = mod_floor(ds[i], 6) == 2;
        n[i] = two[i] ? Int((ds[i] - 2) / 6) : Int(ds[i] / 6);
    }
    std::vector<std::vector<Int>> rows(4, std::vector<Int>(4, Int(0)));
    rows[0][0] = 3;
    for (int i = 0; i < 3; ++i) {
        rows[i + 1][i + 1] = two[i] ? Int(2 * n[i] + 1) : Int(2 * n[i]);
        rows[0][i + 1] = two[i] ? 1 : 0;
        rows[i + 1][0] = rows[0][i + 1];
    }
    return Lattice::from_rows(rows);
}

namespace {

void check_lambda_pair(const Int& di, const Int& dj, const Int& l, const char* name) {
    const bool both_two = mod_floor(di, 6) == 2 && mod_floor(dj, 6) == 2;
    if (both_two ? (l != 1 && l != -1) : l != 0)
        throw std::invalid_argument(std::string("label_rank4: ") + name +
                                    " is inconsistent with the residue classes of the inputs");
}

}  // namespace

Int label_rank4(const Int& d1, const Int& d2, const Int& d3, const Int& l12, const Int& l13,
                const Int& l23, const Int& y, const Int& z, const Int& w) {
    require_star(d1, "label_rank4");
    require_star(d2, "label_rank4");
    require_star(d3, "label_rank4");
    check_lambda_pair(d1, d2, l12, "lambda12");
    check_lambda_pair(d1, d3, l13, "lambda13");
    check_lambda_pair(d2, d3, l23, "lambda23");
    if (gcd_all({y, z, w}) != 1)
        throw std::invalid_argument("label_rank4: (y,z,w) must be coprime");
    return d1 * y * y + d2 * z * z + d3 * w * w + 2 * (l12 * y * z + l13 * y * w + l23 * z * w);
}

std::vector<LabelRow4> enumerate_labels_rank4(const Int& d1, const Int& d2, const Int& d3,
                                              long bound) {
    if (bound < 1)
        throw std::invalid_argument("enumerate_labels_rank4: bound must be >= 1");
    require_star(d1, "enumerate_labels_rank4");
    require_star(d2, "enumerate_labels_rank4");
    require_star(d3, "enumerate_labels_rank4");
    auto options = [](const Int& a, const Int& b) -> std::vector<Int> {
        if (mod_floor(a, 6) == 2 && mod_floor(b, 6) == 2)
            return {Int(-1), Int(1)};
        return {Int(0)};
    };
    const auto o12 = options(d1, d2);
    const auto o13 = options(d1, d3);
    const auto o23 = options(d2, d3);
    std::vector<LabelRow4> rows;
    scan_coprime_triples(bound, [&](long y, long z, long w) {
        for (const auto& l12 : o12)
            for (const auto& l13 : o13)
                for (const auto& l23 : o23) {
                    const Int d = d1 * y * y + d2 * z * z + d3 * w * w +
                                  2 * (l12 * y * z + l13 * y * w + l23 * z * w);
                    if (cond_star(d))
                        rows.push_back({d, Int(y), Int(z), Int(w), l12, l13, l23});
                }
    });
    std::stable_sort(rows.begin(), rows.end(),
                     [](const LabelRow4& a, const LabelRow4& b) { return a.d < b.d; });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const LabelRow4& a, const LabelRow4& b) { return a.d == b.d; }),
               rows.end());
    return rows;
}

std::optional<std::pair<Int, Int>> represents(const BinaryForm& q, const Int& N, bool coprime) {
    if (!q.positive_definite())
        throw std::invalid_argument("represents: form must be positive definite");
    if (N < 0)
        return std::nullopt;
    if (N == 0) {
        if (coprime)
            return std::nullopt;  // gcd(0,0) != 1
        return std::make_pair(Int(0), Int(0));
    }
    // a*q = (a*y + b*z)^2 + disc*z^2 and c*q = (c*z + b*y)^2 + disc*y^2,
    // so |y| <= sqrt(N*c/disc) and |z| <= sqrt(N*a/disc): the search is complete.
    const Int disc = q.a * q.c - q.b * q.b;
    const long ymax = to_int64(isqrt(N * q.c / disc));
    const long zmax = to_int64(isqrt(N * q.a / disc));
    for (long ay = 0; ay <= ymax; ++ay)
        for (long az = 0; az <= zmax; ++az) {
            if (ay == 0 && az == 0)
                continue;
            if (coprime && std::gcd(ay, az) != 1)
                continue;
            for (int sy = 0; sy < (ay == 0 ? 1 : 2); ++sy)
                for (int sz = 0; sz < (az == 0 ? 1 : 2); ++sz) {
                    const Int y = sy ? -ay : ay;
                    const Int z = sz ? -az : az;
                    if (q.eval(y, z) == N)
                        return std::make_pair(y, z);
                }
        }
    return std::nullopt;
}

ModularTable modular_nonrepresentation(const BinaryForm& q, const Int& p) {
    if (!is_prime(p))
        throw std::invalid_argument("modular_nonrepresentation: p must be prime");
    if (p > 1024)
        throw std::invalid_argument("modular_nonrepresentation: p too large for an explicit residue table");
    const long pl = static_cast<long>(to_int64(p));
    const long a = static_cast<long>(to_int64(mod_floor(q.a, p)));
    const long b2 = static_cast<long>(to_int64(mod_floor(2 * q.b, p)));
    const long c = static_cast<long>(to_int64(mod_floor(q.c, p)));
    ModularTable out;
    out.nonrepresenting = true;
    out.table.reserve(static_cast<size_t>(pl) * pl - 1);
    for (long y = 0; y < pl; ++y)
        for (long z = 0; z < pl; ++z) {
            if (y == 0 && z == 0)
                continue;
            const long v = static_cast<long>((a * y % pl * y + b2 * y % pl * z + c * z % pl * z) % pl);
            out.table.push_back({y, z, v});
            if (v == 0) {
                out.nonrepresenting = false;
                if (!out.zero_witness)
                    out.zero_witness = std::make_pair(y, z);
            }
        }
    return out;
}

namespace {

// Does every nonzero residue pair give (d1*y^2 + 2*lam*y*z + d2*z^2)/content
// nonzero mod p?  Values of the family are all divisible by the content.
bool family_nonrepresenting(const Int& d1, const Int& lam, const Int& d2, const Int& content,
                            const Int& p) {
    const long pl = static_cast<long>(to_int64(p));
    for (long y = 0; y < pl; ++y)
        for (long z = 0; z < pl; ++z) {
            if (y == 0 && z == 0)
                continue;
            const Int v = (d1 * y * y + 2 * lam * y * z + d2 * z * z) / content;
            if (mod_floor(v, p) == 0)
                return false;
        }
    return true;
}

}  // namespace

std::optional<ObstructionCertificate> twisted_obstruction(const Int& d1, const Int& d2) {
    const auto lams = lambda_rank3(d1, d2);
    std::vector<Int> common;
    Int content;
    bool first = true;
    for (const auto& lam : lams) {
        const Int c = gcd(gcd(d1, d2), 2 * lam);
        std::vector<Int> candidates;
        for (const auto& f : factorize(c).factors) {
            if (f.prime == 2)
                continue;  // q(1,1) == a + c (mod 2), so 2 never obstructs this way
            if (mod_floor(f.prime, 3) != 2 || f.exponent % 2 == 0)
                continue;
            if (family_nonrepresenting(d1, lam, d2, c, f.prime))
                candidates.push_back(f.prime);
        }
        if (first) {
            common = candidates;
            content = c;
            first = false;
        } else {
            std::vector<Int> kept;
            for (const auto& p : common)
                if (std::find(candidates.begin(), candidates.end(), p) != candidates.end())
                    kept.push_back(p);
            common = kept;
            if (c != content)
                common.clear();
        }
    }
    if (common.empty())
        return std::nullopt;
    const Int p = *std::min_element(common.begin(), common.end());
    // Candidates only survive in the lambda = 0 regime: when both inputs are
    // 2 (mod 6) the content is 2 and carries no odd prime. The primitive part
    // is therefore a diagonal a*y^2 + c*z^2.
    if (lams.size() != 1 || lams[0] != 0)
        throw std::logic_error("twisted_obstruction: certificate outside the lambda = 0 regime");
    ObstructionCertificate cert;
    cert.d1 = d1;
    cert.d2 = d2;
    cert.lambdas = lams;
    cert.p = p;
    cert.content = content;
    cert.p_valuation = factorize(content).exponent_of(p);
    cert.q = BinaryForm{d1 / content, 0, d2 / content};
    const auto table = modular_nonrepresentation(cert.q, p);
    if (!table.nonrepresenting)
        throw std::logic_error("twisted_obstruction: residue table lost nonrepresentation");
    cert.table = table.table;
    cert.conclusion = "for every coprime (y,z) the label d = content*q(y,z) has v_p(d/2) = v_p(content) odd, "
                      "so every induced label fails the twisted condition";
    return cert;
}

ChevalleyZero chevalley_solve(const TernaryForm& q, const Int& p) {
    if (!is_prime(p))
        throw std::invalid_argument("chevalley_solve: p must be prime");
    if (p > 521)
        throw std::invalid_argument("chevalley_solve: p too large for the cubic residue scan");
    const long pl = static_cast<long>(to_int64(p));
    const long a11 = static_cast<long>(to_int64(mod_floor(q.a11, p)));
    const long a22 = static_cast<long>(to_int64(mod_floor(q.a22, p)));
    const long a33 = static_cast<long>(to_int64(mod_floor(q.a33, p)));
    const long a12 = static_cast<long>(to_int64(mod_floor(q.a12, p)));
    const long a13 = static_cast<long>(to_int64(mod_floor(q.a13, p)));
    const long a23 = static_cast<long>(to_int64(mod_floor(q.a23, p)));
    for (long y = 0; y < pl; ++y)
        for (long z = 0; z < pl; ++z)
            for (long w = 0; w < pl; ++w) {
                if (y == 0 && z == 0 && w == 0)
                    continue;
                const long v = (a11 * y % pl * y + a22 * z % pl * z + a33 * w % pl * w +
                                a12 * y % pl * z + a13 * y % pl * w + a23 * z % pl * w) %
                               pl;
                if (v == 0)
                    return {Int(y), Int(z), Int(w)};
            }
    // Unreachable for a quadratic in three variables over F_p.
    throw std::logic_error("chevalley_solve: exhausted residues without a zero");
}

std::optional<LabelWitness> twisted_label_search(const Int& d1, const Int& d2, const Int& d3,
                                                 long bound) {
    for (const auto& row : enumerate_labels_rank4(d1, d2, d3, bound)) {
        if (!cond_twisted(row.d))
            continue;
        LabelWitness w;
        w.y = row.y;
        w.z = row.z;
        w.w = row.w;
        w.lambdas = {row.l12, row.l13, row.l23};
        w.d = row.d;
        return w;
    }
    return std::nullopt;
}

Int square_scale(const Int& d, const Int& k) {
    require_star(d, "square_scale");
    if (k < 1 || !is_perfect_square(k))
        throw std::invalid_argument("square_scale: k must be a positive perfect square");
    return k * d;
}

Rat kappa(const Lattice& L) {
    if (L.degenerate())
        throw std::invalid_argument("kappa: lattice is degenerate");
    Rat r(pow_ui(Int(2), static_cast<unsigned long>(L.rank())), abs(L.determinant()));
    r.canonicalize();
    return r;
}

Lattice fixture_two_planes() {
    return Lattice::from_rows({{3, 1, 1}, {1, 3, 0}, {1, 0, 3}});
}

Lattice fixture_veronese_scroll() {
    return Lattice::from_rows({{3, 3, 4}, {3, 7, 4}, {4, 4, 12}});
}

Lattice fixture_veronese_c60(const Int& k) {
    return Lattice::from_rows(
        {{3, 4, 3 * k}, {4, 12, 4 * k}, {3 * k, 4 * k, 3 * k * k + 20}});
}

Example2044 fixture_ex_20_44() {
    Example2044 ex;
    ex.consistent_d_11 = {Int(62), Int(66)};
    ex.consistent_d_13 = {Int(410), Int(422)};
    return ex;
}

}  // namespace hklat
