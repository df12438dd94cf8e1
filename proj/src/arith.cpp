#include "sixpow/arith.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <numeric>

namespace sixpow {

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m) {
    if (m == 1) return 0;
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
    // extended Euclid on (a mod m, m)
    int64_t t = 0, newt = 1;
    uint64_t r = m, newr = a % m;
    while (newr != 0) {
        uint64_t q = r / newr;
        int64_t tt = t - static_cast<int64_t>(q) * newt;
        t = newt;
        newt = tt;
        uint64_t rr = r - q * newr;
        r = newr;
        newr = rr;
    }
    if (r != 1) throw std::invalid_argument("inv_mod: arguments not coprime");
    return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(m)) : static_cast<uint64_t>(t);
}

uint64_t mod_u64(const BigInt& v, uint64_t m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r.convert_to<uint64_t>();
}

// ---------------------------------------------------------------------------
// Miller-Rabin.  The fixed base set is deterministic for n < 3.3e24.
// ---------------------------------------------------------------------------

namespace {

constexpr uint64_t kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool mr_witness_u64(uint64_t n, uint64_t a, uint64_t d, int s) {
    uint64_t x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;  // composite witness
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : kMrBases) {
        if (a % n == 0) continue;
        if (mr_witness_u64(n, a, d, s)) return false;
    }
    return true;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n <= std::numeric_limits<uint64_t>::max())
        return is_prime(n.convert_to<uint64_t>());
    for (uint32_t p : primes_up_to(1000)) {
        if (n % p == 0) return false;
    }
    BigInt d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : kMrBases) {
        BigInt x = boost::multiprecision::powm(BigInt(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<uint32_t> primes_up_to(uint32_t limit) {
    std::vector<uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (uint32_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (uint64_t j = static_cast<uint64_t>(i) * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return out;
}

namespace {

const std::vector<uint32_t>& trial_primes() {
    static std::vector<uint32_t> primes;
    static std::once_flag once;
    std::call_once(once, [] { primes = primes_up_to(10'000'000); });
    return primes;
}

}  // namespace

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<uint64_t, int>> out;
    for (uint32_t p : trial_primes()) {
        if (static_cast<uint64_t>(p) * p > n) break;
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        if (!is_prime(n)) throw internal_error("factorize: composite cofactor beyond trial range");
        out.emplace_back(n, 1);
    }
    return out;
}

uint64_t multiplicative_order(uint64_t a, uint64_t m) {
    if (m == 0) throw std::invalid_argument("multiplicative_order: modulus must be positive");
    if (m == 1) return 1;
    a %= m;
    if (std::gcd(a, m) != 1) throw std::invalid_argument("multiplicative_order: arguments not coprime");
    // group order phi(m) from the factorization of m
    uint64_t phi = 1;
    for (auto [p, e] : factorize(m)) {
        phi *= p - 1;
        for (int i = 1; i < e; ++i) phi *= p;
    }
    uint64_t order = phi;
    for (auto [p, e] : factorize(phi)) {
        (void)e;
        while (order % p == 0 && pow_mod(a, order / p, m) == 1) order /= p;
    }
    return order;
}

SixthPowerSplit sixth_power_split(uint64_t k) {
    if (k == 0) throw std::invalid_argument("sixth_power_split: k must be positive");
    SixthPowerSplit s{true, 1, 1};
    uint64_t core = 1, root = 1;
    for (auto [p, e] : factorize(k)) {
        if (e >= 6) s.is_free = false;
        for (int i = 0; i < e / 6; ++i) root *= p;
        for (int i = 0; i < e % 6; ++i) core *= p;
    }
    s.core = core;
    s.root = root;
    return s;
}

uint64_t squarefree_part(uint64_t k) {
    uint64_t out = 1;
    for (auto [p, e] : factorize(k)) {
        if (e % 2) out *= p;
    }
    return out;
}

BigInt ipow(BigInt base, unsigned e) {
    BigInt r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

BigInt isqrt_floor(const BigInt& n) {
    if (n < 0) throw std::invalid_argument("isqrt_floor: negative input");
    return boost::multiprecision::sqrt(n);
}

std::optional<BigInt> exact_sqrt(const BigInt& n) {
    if (n < 0) return std::nullopt;
    BigInt r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

BigInt iroot_floor(const BigInt& n, unsigned r) {
    if (r == 0) throw std::invalid_argument("iroot_floor: zero root");
    if (n < 0) throw std::invalid_argument("iroot_floor: negative input");
    if (n == 0 || n == 1) return n;
    // Newton iteration from a safe overestimate
    unsigned bits = boost::multiprecision::msb(n) + 1;
    BigInt x = BigInt(1) << (bits / r + 1);
    while (true) {
        BigInt y = ((r - 1) * x + n / ipow(x, r - 1)) / r;
        if (y >= x) break;
        x = y;
    }
    while (ipow(x, r) > n) --x;
    while (ipow(x + 1, r) <= n) ++x;
    return x;
}

std::optional<BigInt> exact_root(const BigInt& n, unsigned r) {
    if (n < 0) {
        if (r % 2 == 0) return std::nullopt;
        auto m = exact_root(-n, r);
        if (m) return -*m;
        return std::nullopt;
    }
    BigInt x = iroot_floor(n, r);
    if (ipow(x, r) == n) return x;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lagrange-Gauss reduction
// ---------------------------------------------------------------------------

namespace {

BigInt norm2(const Vec2& v) { return v.x * v.x + v.y * v.y; }
BigInt dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// nearest integer to n/d for d > 0 (ties toward -inf); exact
BigInt round_div(const BigInt& n, const BigInt& d) {
    BigInt q = n / d;
    BigInt r = n - q * d;
    if (r < 0) {
        q -= 1;
        r += d;
    }
    if (2 * r > d) q += 1;
    return q;
}

// flip sign so the first nonzero coordinate is positive
Vec2 sign_normal(Vec2 v) {
    if (v.x < 0 || (v.x == 0 && v.y < 0)) {
        v.x = -v.x;
        v.y = -v.y;
    }
    return v;
}

bool lex_less(const Vec2& a, const Vec2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

}  // namespace

std::pair<Vec2, Vec2> lagrange_reduce(const Lattice2D& lat) {
    if (lat.m6 < 1) throw std::invalid_argument("lagrange_reduce: modulus must be positive");
    BigInt q = lat.q % lat.m6;
    if (q < 0) q += lat.m6;
    Vec2 v1{1, q};
    Vec2 v2{0, lat.m6};
    if (norm2(v1) > norm2(v2)) std::swap(v1, v2);
    while (true) {
        BigInt t = round_div(dot(v1, v2), norm2(v1));
        v2.x -= t * v1.x;
        v2.y -= t * v1.y;
        if (norm2(v2) >= norm2(v1)) break;
        std::swap(v1, v2);
    }

    // canonical representative: among the equal-norm choices of v2 pick the
    // lexicographically smallest sign-normalized vector, then order the pair
    BigInt n2 = norm2(v2);
    Vec2 best = sign_normal(v2);
    for (const Vec2& c : {Vec2{v2.x + v1.x, v2.y + v1.y}, Vec2{v2.x - v1.x, v2.y - v1.y}}) {
        if (norm2(c) == n2) {
            Vec2 cn = sign_normal(c);
            if (lex_less(cn, best)) best = cn;
        }
    }
    v2 = best;
    v1 = sign_normal(v1);
    if (norm2(v1) == norm2(v2) && lex_less(v2, v1)) std::swap(v1, v2);

    BigInt det = v1.x * v2.y - v1.y * v2.x;
    if (det != lat.m6 && det != -lat.m6)
        throw internal_error("lagrange_reduce: basis determinant mismatch");
    return {v1, v2};
}

}  // namespace sixpow
