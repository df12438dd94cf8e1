#include "sixpow/elliptic.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace sixpow {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

// ---------------------------------------------------------------------------
// ECPointQ
// ---------------------------------------------------------------------------

ECPointQ ECPointQ::from_projective(BigInt X, BigInt Y, BigInt Z) {
    if (X == 0 && Y == 0 && Z == 0)
        throw std::invalid_argument("ECPointQ: (0 : 0 : 0) is not a point");
    BigInt g = gcd(gcd(abs(X), abs(Y)), abs(Z));
    X /= g;
    Y /= g;
    Z /= g;
    if (Z < 0 || (Z == 0 && Y < 0)) {
        X = -X;
        Y = -Y;
        Z = -Z;
    }
    ECPointQ P;
    if (Z == 0) {
        if (X != 0) throw std::invalid_argument("ECPointQ: point at infinity must be (0 : 1 : 0)");
        P.X_ = 0;
        P.Y_ = 1;
        P.Z_ = 0;
        return P;
    }
    P.X_ = std::move(X);
    P.Y_ = std::move(Y);
    P.Z_ = std::move(Z);
    return P;
}

ECPointQ ECPointQ::from_affine(const BigRat& x, const BigRat& y) {
    BigInt dx = denominator(x), dy = denominator(y);
    BigInt Z = lcm(dx, dy);
    BigInt X = numerator(x) * (Z / dx);
    BigInt Y = numerator(y) * (Z / dy);
    return from_projective(std::move(X), std::move(Y), std::move(Z));
}

BigRat ECPointQ::x() const {
    if (is_infinity()) throw std::invalid_argument("affine coordinate of the identity");
    return BigRat(X_, Z_);
}

BigRat ECPointQ::y() const {
    if (is_infinity()) throw std::invalid_argument("affine coordinate of the identity");
    return BigRat(Y_, Z_);
}

std::ostream& operator<<(std::ostream& os, const ECPointQ& P) {
    return os << '(' << P.X() << " : " << P.Y() << " : " << P.Z() << ')';
}

bool on_curve(const MordellCurve& E, const ECPointQ& P) {
    return P.Y() * P.Y() * P.Z() == P.X() * P.X() * P.X() + E.a * P.Z() * P.Z() * P.Z();
}

ECPointQ ec_neg(const ECPointQ& P) {
    if (P.is_infinity()) return P;
    return ECPointQ::from_projective(P.X(), -P.Y(), P.Z());
}

ECPointQ ec_add(const MordellCurve& E, const ECPointQ& P, const ECPointQ& Q) {
    if (!on_curve(E, P) || !on_curve(E, Q))
        throw std::invalid_argument("ec_add: point not on the given curve");
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return P;
    BigRat x1 = P.x(), y1 = P.y(), x2 = Q.x(), y2 = Q.y();
    BigRat lambda;
    if (x1 == x2) {
        if (y1 == -y2) return ECPointQ::infinity();
        lambda = BigRat(3) * x1 * x1 / (BigRat(2) * y1);
    } else {
        lambda = (y2 - y1) / (x2 - x1);
    }
    BigRat x3 = lambda * lambda - x1 - x2;
    BigRat y3 = lambda * (x1 - x3) - y1;
    return ECPointQ::from_affine(x3, y3);
}

ECPointQ ec_mul(const MordellCurve& E, const BigInt& n, const ECPointQ& P) {
    BigInt m = n;
    ECPointQ base = P;
    if (m < 0) {
        m = -m;
        base = ec_neg(base);
    }
    ECPointQ acc = ECPointQ::infinity();
    while (m > 0) {
        if ((m & 1) != 0) acc = ec_add(E, acc, base);
        m >>= 1;
        if (m > 0) base = ec_add(E, base, base);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// F_p arithmetic
// ---------------------------------------------------------------------------

CurveFp reduce_curve(const MordellCurve& E, uint64_t p) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("reduce_curve: p must be a prime >= 5");
    uint64_t a = mod_u64(E.a, p);
    if (a == 0) throw std::invalid_argument("reduce_curve: bad reduction (p | a)");
    return CurveFp{p, a};
}

bool fp_on_curve(const CurveFp& E, const ECPointFp& P) {
    if (P.inf) return true;
    uint64_t lhs = mul_mod(P.y, P.y, E.p);
    uint64_t rhs = (mul_mod(mul_mod(P.x, P.x, E.p), P.x, E.p) + E.a) % E.p;
    return lhs == rhs;
}

ECPointFp fp_neg(const CurveFp& E, ECPointFp P) {
    if (!P.inf) P.y = (E.p - P.y) % E.p;
    return P;
}

ECPointFp fp_add(const CurveFp& E, const ECPointFp& P, const ECPointFp& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    uint64_t p = E.p;
    uint64_t lambda;
    if (P.x == Q.x) {
        if ((P.y + Q.y) % p == 0) return ECPointFp{};  // includes 2-torsion doubling
        uint64_t num = mul_mod(3, mul_mod(P.x, P.x, p), p);
        lambda = mul_mod(num, inv_mod(2 * P.y % p, p), p);
    } else {
        uint64_t num = (Q.y + p - P.y) % p;
        uint64_t den = (Q.x + p - P.x) % p;
        lambda = mul_mod(num, inv_mod(den, p), p);
    }
    uint64_t x3 = (mul_mod(lambda, lambda, p) + 2 * p - P.x - Q.x) % p;
    uint64_t y3 = (mul_mod(lambda, (P.x + p - x3) % p, p) + p - P.y) % p;
    return ECPointFp{x3, y3, false};
}

ECPointFp fp_mul(const CurveFp& E, uint64_t n, const ECPointFp& P) {
    ECPointFp acc{};
    ECPointFp base = P;
    while (n > 0) {
        if (n & 1) acc = fp_add(E, acc, base);
        n >>= 1;
        if (n > 0) base = fp_add(E, base, base);
    }
    return acc;
}

namespace {

uint64_t fp_point_order(const CurveFp& E, const ECPointFp& P, uint64_t n,
                        const std::vector<std::pair<uint64_t, int>>& nfac) {
    uint64_t o = n;
    for (auto [q, e] : nfac) {
        (void)e;
        while (o % q == 0 && fp_mul(E, o / q, P).inf) o /= q;
    }
    return o;
}

}  // namespace

AbelianGroupFp group_structure_fp(const MordellCurve& E, uint64_t p) {
    if (p > 100000) throw std::invalid_argument("group_structure_fp: enumeration regime is p <= 1e5");
    AbelianGroupFp G;
    G.curve = reduce_curve(E, p);
    const uint64_t a = G.curve.a;

    // enumerate: sqrt table, then x ascending
    std::vector<std::vector<uint32_t>> roots(p);
    for (uint64_t y = 0; y < p; ++y) roots[mul_mod(y, y, p)].push_back(static_cast<uint32_t>(y));
    G.points.push_back(ECPointFp{});
    for (uint64_t x = 0; x < p; ++x) {
        uint64_t rhs = (mul_mod(mul_mod(x, x, p), x, p) + a) % p;
        for (uint32_t y : roots[rhs]) G.points.push_back(ECPointFp{x, y, false});
    }
    uint64_t n = G.points.size();
    G.order = n;

    // Hasse bound sanity
    {
        int64_t diff = static_cast<int64_t>(n) - static_cast<int64_t>(p) - 1;
        if (static_cast<double>(diff) * diff > 4.0 * static_cast<double>(p) + 1e-9)
            throw internal_error("group_structure_fp: Hasse bound violated");
    }

    if (n == 1) {
        G.d1 = G.d2 = 1;
        return G;
    }
    auto nfac = factorize(n);

    // exponent = lcm of element orders; full deterministic pass
    uint64_t lambda = 1;
    for (const auto& P : G.points) {
        if (P.inf) continue;
        lambda = std::lcm(lambda, fp_point_order(G.curve, P, n, nfac));
        if (lambda == n) break;
    }
    G.d2 = lambda;
    G.d1 = n / lambda;
    if (lambda * G.d1 != n || lambda % G.d1 != 0 || (p - 1) % G.d1 != 0)
        throw internal_error("group_structure_fp: invariant factors inconsistent");

    for (const auto& P : G.points) {
        if (P.inf) continue;
        if (fp_point_order(G.curve, P, n, nfac) == G.d2) {
            G.g2 = P;
            break;
        }
    }
    if (G.d1 == 1) return G;

    // complement generator: h with |<g2>| * ord(h) / |<h> n <g2>| = n and
    // gcd(d1, |<h> n <g2>|) = 1; then c*h has order d1 and meets <g2> trivially
    std::unordered_set<uint64_t> m2;
    {
        ECPointFp acc{};
        for (uint64_t j = 0; j < G.d2; ++j) {
            m2.insert(acc.key(p));
            acc = fp_add(G.curve, acc, *G.g2);
        }
    }
    for (const auto& h : G.points) {
        if (h.inf) continue;
        uint64_t oh = fp_point_order(G.curve, h, n, nfac);
        uint64_t c = 0;
        {
            ECPointFp acc{};
            for (uint64_t j = 0; j < oh; ++j) {
                if (m2.count(acc.key(p))) ++c;
                acc = fp_add(G.curve, acc, h);
            }
        }
        if (oh * G.d2 / c != n || std::gcd(G.d1, c) != 1) continue;
        ECPointFp g1 = fp_mul(G.curve, c, h);
        if (fp_point_order(G.curve, g1, n, nfac) != G.d1)
            throw internal_error("group_structure_fp: complement order mismatch");
        G.g1 = g1;
        break;
    }
    if (!G.g1) throw internal_error("group_structure_fp: no complement generator found");

    // the d1 x d2 combinations must exhaust the group
    std::unordered_set<uint64_t> span;
    ECPointFp row{};
    for (uint64_t i = 0; i < G.d1; ++i) {
        ECPointFp cur = row;
        for (uint64_t j = 0; j < G.d2; ++j) {
            span.insert(cur.key(p));
            cur = fp_add(G.curve, cur, *G.g2);
        }
        row = fp_add(G.curve, row, *G.g1);
    }
    if (span.size() != n) throw internal_error("group_structure_fp: generators do not span");
    return G;
}

ECPointFp reduce_point(const MordellCurve& E, const ECPointQ& P, uint64_t p) {
    CurveFp Ep = reduce_curve(E, p);
    uint64_t Z = mod_u64(P.Z(), p);
    if (Z == 0) {
        if (mod_u64(P.X(), p) != 0)
            throw internal_error("reduce_point: Z = 0 but X != 0 (point not on curve?)");
        return ECPointFp{};
    }
    uint64_t zi = inv_mod(Z, p);
    ECPointFp R{mul_mod(mod_u64(P.X(), p), zi, p), mul_mod(mod_u64(P.Y(), p), zi, p), false};
    if (!fp_on_curve(Ep, R)) throw internal_error("reduce_point: reduction off curve");
    return R;
}

// ---------------------------------------------------------------------------
// torsion classification
// ---------------------------------------------------------------------------

TorsionInfo torsion_structure(const BigInt& a) {
    if (a == 0) throw std::invalid_argument("torsion_structure: a must be nonzero");
    if (auto t = exact_root(a, 6)) {
        BigInt t2 = *t * *t;
        return {6, ECPointQ::from_affine(BigRat(2 * t2), BigRat(3 * t2 * *t))};
    }
    if (auto s = exact_sqrt(a)) {
        return {3, ECPointQ::from_affine(BigRat(0), BigRat(*s))};
    }
    if (a % 432 == 0) {
        if (auto t = exact_root(-a / 432, 6)) {
            BigInt t2 = *t * *t;
            return {3, ECPointQ::from_affine(BigRat(12 * t2), BigRat(36 * t2 * *t))};
        }
    }
    if (auto c = exact_root(a, 3)) {
        return {2, ECPointQ::from_affine(BigRat(-*c), BigRat(0))};
    }
    return {1, std::nullopt};
}

// ---------------------------------------------------------------------------
// search and subgroups
// ---------------------------------------------------------------------------

std::vector<ECPointQ> naive_point_search(const BigInt& a, uint64_t height_bound) {
    if (height_bound == 0) throw std::invalid_argument("naive_point_search: bound must be positive");
    std::vector<ECPointQ> out;
    out.push_back(ECPointQ::infinity());
    BigInt H2 = BigInt(height_bound) * height_bound;
    for (uint64_t v = 1; v <= height_bound; ++v) {
        BigInt v2 = BigInt(v) * v;
        BigInt av6 = a * v2 * v2 * v2;
        for (BigInt u = -H2; u <= H2; ++u) {
            if (gcd(abs(u), BigInt(v)) != 1) continue;
            BigInt t = u * u * u + av6;
            if (t < 0) continue;
            auto s = exact_sqrt(t);
            if (!s) continue;
            BigInt v3 = v2 * v;
            out.push_back(ECPointQ::from_affine(BigRat(u, v2), BigRat(*s, v3)));
            if (*s != 0) out.push_back(ECPointQ::from_affine(BigRat(u, v2), BigRat(-*s, v3)));
        }
    }
    return out;
}

MWSubgroup make_subgroup(const BigInt& a, std::vector<ECPointQ> gens) {
    MordellCurve E(a);
    for (const auto& P : gens) {
        if (!on_curve(E, P)) throw std::invalid_argument("make_subgroup: generator not on curve");
        if (P.is_infinity()) throw std::invalid_argument("make_subgroup: identity as generator");
        ECPointQ acc = P;
        for (int m = 2; m <= 12; ++m) {
            acc = ec_add(E, acc, P);
            if (acc.is_infinity())
                throw std::invalid_argument("make_subgroup: generator has finite order");
        }
    }
    MWSubgroup A;
    A.a = a;
    A.gens = std::move(gens);
    A.torsion = torsion_structure(a);
    return A;
}

bool certify_nondivisibility(const MWSubgroup& A, uint64_t ell,
                             const std::vector<uint64_t>& trial_primes) {
    if (ell > 100 || !is_prime(ell)) throw std::invalid_argument("certify_nondivisibility: l must be a prime <= 100");
    MordellCurve E(A.a);
    const size_t r = A.gens.size();
    uint64_t tor = std::gcd(static_cast<uint64_t>(A.torsion.order), ell);

    // cosets of A/lA, the zero coset excluded
    uint64_t total = tor;
    for (size_t i = 0; i < r; ++i) total *= ell;
    if (total <= 1) return true;
    std::vector<bool> certified(total, false);
    certified[0] = true;
    uint64_t remaining = total - 1;

    for (uint64_t q : trial_primes) {
        if (remaining == 0) break;
        if (q < 5 || !is_prime(q) || mod_u64(6 * A.a, q) == 0) continue;
        bool bad_den = false;
        for (const auto& P : A.gens)
            if (mod_u64(P.Z(), q) == 0) bad_den = true;
        if (bad_den) continue;

        AbelianGroupFp G = group_structure_fp(E, q);
        std::unordered_set<uint64_t> ellG;
        for (const auto& P : G.points) ellG.insert(fp_mul(G.curve, ell, P).key(q));

        std::vector<std::vector<ECPointFp>> mult(r);
        for (size_t i = 0; i < r; ++i) {
            ECPointFp R = reduce_point(E, A.gens[i], q);
            ECPointFp acc{};
            for (uint64_t m = 0; m < ell; ++m) {
                mult[i].push_back(acc);
                acc = fp_add(G.curve, acc, R);
            }
        }
        std::vector<ECPointFp> tmult;
        {
            ECPointFp T{};
            ECPointFp Tred = A.torsion.gen ? reduce_point(E, *A.torsion.gen, q) : ECPointFp{};
            for (uint64_t t = 0; t < tor; ++t) {
                tmult.push_back(T);
                T = fp_add(G.curve, T, Tred);
            }
        }
        for (uint64_t idx = 1; idx < total; ++idx) {
            if (certified[idx]) continue;
            uint64_t rem = idx;
            ECPointFp acc = tmult[rem % tor];
            rem /= tor;
            for (size_t i = 0; i < r; ++i) {
                acc = fp_add(G.curve, acc, mult[i][rem % ell]);
                rem /= ell;
            }
            if (!ellG.count(acc.key(q))) {
                certified[idx] = true;
                --remaining;
            }
        }
    }
    return remaining == 0;
}

// ---------------------------------------------------------------------------
// generator files
// ---------------------------------------------------------------------------

const char* tag_name(CurveTag t) {
    switch (t) {
        case CurveTag::Ek: return "Ek";
        case CurveTag::E4k: return "E4k";
        case CurveTag::EmK2: return "EmK2";
        case CurveTag::E16k2: return "E16k2";
        case CurveTag::Ek3: return "Ek3";
        case CurveTag::Em4k4: return "Em4k4";
    }
    return "?";
}

std::optional<CurveTag> tag_from_name(const std::string& s) {
    for (CurveTag t : {CurveTag::Ek, CurveTag::E4k, CurveTag::EmK2, CurveTag::E16k2,
                       CurveTag::Ek3, CurveTag::Em4k4}) {
        if (s == tag_name(t)) return t;
    }
    return std::nullopt;
}

BigInt curve_param(CurveTag t, uint64_t k) {
    BigInt K(k);
    switch (t) {
        case CurveTag::Ek: return K;
        case CurveTag::E4k: return 4 * K;
        case CurveTag::EmK2: return -K * K;
        case CurveTag::E16k2: return 16 * K * K;
        case CurveTag::Ek3: return K * K * K;
        case CurveTag::Em4k4: return -4 * K * K * K * K;
    }
    throw std::invalid_argument("curve_param: bad tag");
}

std::vector<GeneratorRecord> read_generator_file(std::istream& is) {
    std::vector<GeneratorRecord> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto fail = [&](const std::string& msg) {
            throw std::invalid_argument("generator file line " + std::to_string(lineno) + ": " + msg);
        };
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::istringstream ss(trimmed);
        uint64_t k;
        std::string tagstr;
        int rank;
        if (!(ss >> k >> tagstr >> rank)) fail("expected `k tag rank ...`");
        auto tag = tag_from_name(tagstr);
        if (!tag) fail("unknown curve tag `" + tagstr + "`");
        if (rank < 0) fail("negative rank");
        MWSubgroup sub;
        try {
            std::vector<ECPointQ> gens;
            for (int i = 0; i < rank; ++i) {
                std::string xs, ys, zs;
                if (!(ss >> xs >> ys >> zs)) throw std::invalid_argument("missing generator coordinates");
                gens.push_back(ECPointQ::from_projective(BigInt(xs), BigInt(ys), BigInt(zs)));
            }
            sub = make_subgroup(curve_param(*tag, k), std::move(gens));
        } catch (const std::exception& e) {
            fail(e.what());
        }
        out.push_back(GeneratorRecord{k, *tag, std::move(sub)});
    }
    return out;
}

std::vector<GeneratorRecord> read_generator_file_path(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open generator file: " + path);
    return read_generator_file(is);
}

}  // namespace sixpow
