#include "sixpow/repfind.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sixpow/curve_local.hpp"

namespace sixpow {

namespace {

// roots of t^6 = -1 (mod p^e) for p = 1 (mod 4), by scanning mod p and
// lifting digit by digit (the derivative 6t^5 is a unit)
std::vector<uint64_t> sixth_roots_of_minus_one(uint64_t p, int e) {
    std::vector<uint64_t> roots;
    for (uint64_t t = 1; t < p; ++t)
        if ((pow_mod(t, 6, p) + 1) % p == 0) roots.push_back(t);
    uint64_t mod = p;
    for (int j = 1; j < e; ++j) {
        uint64_t next = mod * p;
        for (auto& t : roots) {
            uint64_t f = (pow_mod(t, 6, next) + 1) % next;            // divisible by mod
            uint64_t fp = mul_mod(6, pow_mod(t, 5, p), p);            // unit mod p
            uint64_t d = mul_mod((p - (f / mod) % p) % p, inv_mod(fp, p), p);
            t = (t + mul_mod(d % next, mod % next, next)) % next;
        }
        mod = next;
    }
    return roots;
}

}  // namespace

std::vector<Representation> find_representation(uint64_t m) {
    if (m == 0) throw std::invalid_argument("find_representation: m must be positive");
    if (m > 1000) throw std::invalid_argument("find_representation: m too large (m^6 must fit in 64 bits)");
    auto fac = factorize(m);
    for (auto [p, e] : fac) {
        (void)e;
        if (p % 4 != 1)
            throw std::invalid_argument("find_representation: every prime factor of m must be 1 (mod 4)");
    }
    if (m == 1) return {};  // only integer representations; excluded

    // roots of q^6 = -1 (mod m^6) by CRT over the prime powers of m^6
    std::vector<uint64_t> roots{0};
    uint64_t mod_so_far = 1;
    for (auto [p, e] : fac) {
        uint64_t pe = 1;
        for (int i = 0; i < 6 * e; ++i) pe *= p;
        auto local = sixth_roots_of_minus_one(p, 6 * e);
        std::vector<uint64_t> next;
        uint64_t new_mod = mod_so_far * pe;
        // r = a (mod mod_so_far), r = b (mod pe)
        for (uint64_t a : roots) {
            for (uint64_t b : local) {
                if (mod_so_far == 1) {
                    next.push_back(b);
                    continue;
                }
                uint64_t inv = inv_mod(mod_so_far % pe, pe);
                uint64_t diff = (b + pe - a % pe) % pe;
                uint64_t r = (a + mul_mod(mul_mod(diff, inv, pe), mod_so_far % new_mod, new_mod)) % new_mod;
                next.push_back(r);
            }
        }
        roots = std::move(next);
        mod_so_far = new_mod;
    }
    const uint64_t M = mod_so_far;  // = m^6

    std::set<std::array<BigInt, 3>> seen;
    std::vector<Representation> out;
    for (uint64_t q : roots) {
        auto [v1, v2] = lagrange_reduce(Lattice2D{BigInt(M), BigInt(q)});
        for (int alpha = -2; alpha <= 2; ++alpha) {
            for (int beta = -2; beta <= 2; ++beta) {
                if (alpha == 0 && beta == 0) continue;
                BigInt x = alpha * v1.x + beta * v2.x;
                BigInt y = alpha * v1.y + beta * v2.y;
                BigInt a = boost::multiprecision::abs(x);
                BigInt b = boost::multiprecision::abs(y);
                if (a > b) std::swap(a, b);
                if (a == 0 || boost::multiprecision::gcd(a, BigInt(m)) != 1 ||
                    boost::multiprecision::gcd(b, BigInt(m)) != 1)
                    continue;
                BigInt S = ipow(a, 6) + ipow(b, 6);
                if (S % M != 0) throw internal_error("find_representation: lattice vector violates m^6 | a^6+b^6");
                BigInt k = S / M;
                if (seen.insert({k, a, b}).second) out.push_back(Representation{k, a, b, m});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Representation& l, const Representation& r) {
        if (l.k != r.k) return l.k < r.k;
        if (l.a != r.a) return l.a < r.a;
        return l.b < r.b;
    });
    return out;
}

FamilyResult verify_family(int64_t t_lo, int64_t t_hi) {
    if (t_lo > t_hi) throw std::invalid_argument("verify_family: empty range");
    const BigInt c1 = 2863, d1 = 10764, c2 = 1207, d2 = 26455;
    const BigInt M = ipow(BigInt(13), 6);

    FamilyResult res{true, true, false, {}};

    // coefficient claim: with f1^6 + f2^6 = P(t)/13^6, the t^i coefficient
    // of P is divisible by 13^7 for i >= 1 and P_0/13^6 = 5 (mod 13)
    BigInt binom = 1;
    for (int i = 0; i <= 6; ++i) {
        BigInt Pi = binom * (ipow(c1, 6 - i) * ipow(d1, i) + ipow(c2, 6 - i) * ipow(d2, i));
        if (Pi % M != 0) {
            res.coefficient_claim = false;
            break;
        }
        BigInt Qi = Pi / M;
        if (i == 0 && Qi % 13 != 5) res.coefficient_claim = false;
        if (i >= 1 && Qi % 13 != 0) res.coefficient_claim = false;
        binom = binom * (6 - i) / (i + 1);
    }

    res.five_not_a_sum_mod_13 = !sumset_mod_p(13).contains(5);

    for (int64_t t = t_lo; t <= t_hi; ++t) {
        BigInt f1n = c1 + d1 * t;
        BigInt f2n = c2 + d2 * t;
        BigInt S = ipow(f1n, 6) + ipow(f2n, 6);
        bool ok = (S % M == 0);
        BigInt k = ok ? S / M : BigInt(0);
        ok = ok && k > 0 && k % 13 == 5;
        if (!ok) res.all_ok = false;
        if (t >= -2 && t <= 2) res.witnesses.push_back(FamilyWitness{t, k});
    }
    return res;
}

OddPowerRep odd_power_rep(unsigned n) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("odd_power_rep: n must be odd, n >= 3");
    BigInt half = ipow(BigInt(2), n - 1);
    BigInt xn = half - 1, yn = half + 1;  // numerators over 2
    BigInt sum = ipow(xn, n) + ipow(yn, n);
    BigInt den = ipow(BigInt(2), n);
    if (sum % den != 0) throw internal_error("odd_power_rep: sum not integral");
    return OddPowerRep{n, BigRat(xn, 2), BigRat(yn, 2), sum / den};
}

bool verify_rep(const BigInt& k, const BigInt& a, const BigInt& b, const BigInt& m) {
    if (m <= 0) throw std::invalid_argument("verify_rep: m must be positive");
    return k * ipow(m, 6) == ipow(a, 6) + ipow(b, 6);
}

}  // namespace sixpow
